//! Weyl-group elements as words in simple reflections and as integer lattice
//! maps, together with orbit and subsystem machinery: dominant
//! representatives, involution factorization into commuting reflections,
//! perpendicular subsystems with component typing, and the stabilizer check
//! via exhaustive enumeration at desk scale.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::rootsys::{recognize_cartan, Root, RootSystem, SystemType};
use crate::scalar::{rat, Rat, Scalar};
use num_traits::Zero;

/// Ranks above this are out of reach for exhaustive Weyl-group enumeration;
/// larger systems must work with maps built from explicit words.
pub const MAX_ENUM_RANK: usize = 6;

/// An integer matrix acting on root coordinates; column `j` is the image of
/// the j-th simple root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeMap<I> {
    m: Vec<Vec<I>>,
}

impl<I: Scalar> LatticeMap<I> {
    pub fn from_rows(m: Vec<Vec<I>>) -> Result<Self> {
        let n = m.len();
        if m.iter().any(|row| row.len() != n) {
            return Err(Error::ShapeError {
                expected: n,
                got: m.iter().map(|r| r.len()).max().unwrap_or(0),
            });
        }
        Ok(LatticeMap { m })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = vec![vec![I::zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = I::one();
        }
        LatticeMap { m }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn rows(&self) -> &[Vec<I>] {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }

    /// Composition "self after other" (apply `other` first).
    pub fn compose(&self, other: &LatticeMap<I>) -> LatticeMap<I> {
        let n = self.dim();
        let mut out = vec![vec![I::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.m[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i][j] =
                        out[i][j].clone() + self.m[i][k].clone() * other.m[k][j].clone();
                }
            }
        }
        LatticeMap { m: out }
    }

    pub fn apply_vec(&self, v: &[I]) -> Vec<I> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n).fold(I::zero(), |acc, j| {
                    acc + self.m[i][j].clone() * v[j].clone()
                })
            })
            .collect()
    }

    pub fn apply_root(&self, r: &Root<I>) -> Root<I> {
        Root::new(self.apply_vec(&r.0))
    }

    pub fn apply_rat(&self, v: &[Rat<I>]) -> Vec<Rat<I>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n).fold(Rat::zero(), |acc, j| {
                    acc + rat(self.m[i][j].clone()) * v[j].clone()
                })
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> LatticeMap<I> {
        let mut out = LatticeMap::identity(self.dim());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    /// Multiplicative order, or an error if it exceeds the search bound
    /// (every map permuting a finite root set has small finite order).
    pub fn order(&self) -> Result<usize> {
        let mut cur = self.clone();
        for k in 1..=1024usize {
            if cur.is_identity() {
                return Ok(k);
            }
            cur = self.compose(&cur);
        }
        Err(Error::InternalInvariantViolation(
            "matrix order exceeds bound; not of finite order".into(),
        ))
    }

    /// Does this map send the root set bijectively onto itself?
    pub fn permutes_roots(&self, rs: &RootSystem<I>) -> bool {
        if self.dim() != rs.rank() {
            return false;
        }
        let mut seen: BTreeSet<Vec<I>> = BTreeSet::new();
        for r in rs.all_roots() {
            let img = self.apply_root(&r);
            if !rs.contains(&img) {
                return false;
            }
            seen.insert(img.0);
        }
        seen.len() == rs.num_roots()
    }

    /// Does this map preserve the symmetrized form?
    pub fn preserves_form(&self, rs: &RootSystem<I>) -> bool {
        let n = rs.rank();
        if self.dim() != n {
            return false;
        }
        for i in 0..n {
            let ei = self.apply_root(&rs.simple(i));
            for j in 0..n {
                let ej = self.apply_root(&rs.simple(j));
                if rs.form_int(&ei, &ej) != rs.form()[i][j] {
                    return false;
                }
            }
        }
        true
    }
}

impl<I: Scalar> fmt::Display for LatticeMap<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.m {
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A word in simple reflections, letters 1-based, applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylWord {
    letters: Vec<usize>,
}

impl WeylWord {
    pub fn new(letters: Vec<usize>, rank: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l < 1 || l > rank) {
            return Err(Error::PreconditionViolated(format!(
                "word letter {bad} outside 1..={rank}"
            )));
        }
        Ok(WeylWord { letters })
    }

    pub fn empty() -> Self {
        WeylWord { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Word for `self âˆ˜ earlier` (apply `earlier` first).
    pub fn after(&self, earlier: &WeylWord) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&earlier.letters);
        WeylWord { letters }
    }

    pub fn apply<I: Scalar>(&self, rs: &RootSystem<I>, v: &Root<I>) -> Result<Root<I>> {
        if v.len() != rs.rank() {
            return Err(Error::ShapeError {
                expected: rs.rank(),
                got: v.len(),
            });
        }
        let mut cur = v.clone();
        for &l in self.letters.iter().rev() {
            cur = reflect_step(rs, l - 1, &cur);
        }
        Ok(cur)
    }

    pub fn to_matrix<I: Scalar>(&self, rs: &RootSystem<I>) -> LatticeMap<I> {
        let mut m = LatticeMap::identity(rs.rank());
        for &l in self.letters.iter().rev() {
            m = simple_reflection(rs, l - 1).compose(&m);
        }
        m
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// Apply the i-th simple reflection (0-based) to an arbitrary integer vector.
fn reflect_step<I: Scalar>(rs: &RootSystem<I>, i: usize, v: &Root<I>) -> Root<I> {
    let n = rs.rank();
    let c = (0..n).fold(I::zero(), |acc, j| {
        acc + rs.cartan()[i][j].clone() * v.0[j].clone()
    });
    let mut out = v.0.clone();
    out[i] = out[i].clone() - c;
    Root::new(out)
}

/// Matrix of the i-th simple reflection (0-based).
pub fn simple_reflection<I: Scalar>(rs: &RootSystem<I>, i: usize) -> LatticeMap<I> {
    let n = rs.rank();
    let mut m = LatticeMap::<I>::identity(n).m;
    for j in 0..n {
        m[i][j] = m[i][j].clone() - rs.cartan()[i][j].clone();
    }
    LatticeMap { m }
}

/// Matrix of the reflection along an arbitrary root.
pub fn reflection_matrix<I: Scalar>(rs: &RootSystem<I>, alpha: &Root<I>) -> Result<LatticeMap<I>> {
    rs.check_member(alpha)?;
    let n = rs.rank();
    let mut m = LatticeMap::<I>::identity(n).m;
    for j in 0..n {
        let c = rs.cartan_int(alpha, &rs.simple(j))?;
        for (row, mrow) in m.iter_mut().enumerate() {
            mrow[j] = mrow[j].clone() - c.clone() * alpha.0[row].clone();
        }
    }
    Ok(LatticeMap { m })
}

/// Reflection of `beta` along the root `alpha`.
pub fn reflect<I: Scalar>(rs: &RootSystem<I>, alpha: &Root<I>, beta: &Root<I>) -> Result<Root<I>> {
    rs.check_member(alpha)?;
    rs.check_member(beta)?;
    let c = rs.cartan_int(alpha, beta)?;
    let out = Root::new(
        beta.0
            .iter()
            .zip(&alpha.0)
            .map(|(b, a)| b.clone() - c.clone() * a.clone())
            .collect(),
    );
    debug_assert!(rs.contains(&out));
    Ok(out)
}

/// Greedy ascent to the dominant representative: while some `<beta, a_i>` is
/// negative, reflect at the smallest such `i`. Returns the dominant root and
/// a word with `apply(word, beta) = dominant`.
pub fn dominant_representative<I: Scalar>(
    rs: &RootSystem<I>,
    beta: &Root<I>,
) -> Result<(Root<I>, WeylWord)> {
    rs.check_member(beta)?;
    let mut cur = beta.clone();
    let mut applied: Vec<usize> = Vec::new();
    loop {
        let mut moved = false;
        for i in 0..rs.rank() {
            if rs.form_int(&rs.simple(i), &cur) < I::zero() {
                cur = reflect_step(rs, i, &cur);
                applied.push(i + 1);
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    let letters: Vec<usize> = applied.into_iter().rev().collect();
    Ok((cur, WeylWord { letters }))
}

/// Full Weyl orbit of a root: closure under all simple reflections.
pub fn orbit<I: Scalar>(rs: &RootSystem<I>, beta: &Root<I>) -> Result<BTreeSet<Root<I>>> {
    rs.check_member(beta)?;
    let mut seen: BTreeSet<Root<I>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(beta.clone());
    queue.push_back(beta.clone());
    while let Some(r) = queue.pop_front() {
        for i in 0..rs.rank() {
            let img = reflect_step(rs, i, &r);
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    Ok(seen)
}

/// If `m` is an involutive Weyl element, factor it as a product of
/// reflections along pairwise perpendicular positive roots. Returns `None`
/// when `m` is not an involution.
pub fn involution_factorization<I: Scalar>(
    rs: &RootSystem<I>,
    m: &LatticeMap<I>,
) -> Result<Option<Vec<Root<I>>>> {
    if !m.permutes_roots(rs) || !m.preserves_form(rs) {
        return Err(Error::NotWeyl("map does not permute the root set".into()));
    }
    if !m.compose(m).is_identity() {
        return Ok(None);
    }
    let mut cur = m.clone();
    let mut out: Vec<Root<I>> = Vec::new();
    while !cur.is_identity() {
        let negated = rs
            .positives()
            .iter()
            .find(|r| cur.apply_root(r) == r.neg());
        let Some(alpha) = negated else {
            // An involutive isometry of the root set negating no root is not
            // a product of root reflections, hence not a Weyl element.
            return Err(Error::NotWeyl(
                "involutive isometry negates no root".into(),
            ));
        };
        out.push(alpha.clone());
        cur = reflection_matrix(rs, alpha)?.compose(&cur);
    }
    for (i, a) in out.iter().enumerate() {
        for b in out.iter().skip(i + 1) {
            if !rs.form_int(a, b).is_zero() {
                return Err(Error::InternalInvariantViolation(
                    "extracted reflection roots are not perpendicular".into(),
                ));
            }
        }
    }
    Ok(Some(out))
}

/// An irreducible component of a subsystem.
#[derive(Debug, Clone)]
pub struct SubsystemComponent<I> {
    pub simples: Vec<Root<I>>,
    pub stype: SystemType,
}

/// A subset of the root set closed under negation and internal addition,
/// with a computed simple basis and irreducible component typing.
#[derive(Debug, Clone)]
pub struct Subsystem<I: Scalar> {
    positives: Vec<Root<I>>,
    simples: Vec<Root<I>>,
    components: Vec<SubsystemComponent<I>>,
}

impl<I: Scalar> Subsystem<I> {
    pub fn positives(&self) -> &[Root<I>] {
        &self.positives
    }

    pub fn simples(&self) -> &[Root<I>] {
        &self.simples
    }

    pub fn components(&self) -> &[SubsystemComponent<I>] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.positives.is_empty()
    }

    /// Positive roots lying in the given component (non-perpendicular to at
    /// least one of its simples).
    pub fn component_positives(&self, rs: &RootSystem<I>, idx: usize) -> Vec<Root<I>> {
        self.positives
            .iter()
            .filter(|r| {
                self.components[idx]
                    .simples
                    .iter()
                    .any(|s| !rs.form_int(r, s).is_zero())
            })
            .cloned()
            .collect()
    }

    /// Index of the component containing the given subsystem root.
    pub fn component_of(&self, rs: &RootSystem<I>, r: &Root<I>) -> Option<usize> {
        (0..self.components.len()).find(|&c| {
            self.components[c]
                .simples
                .iter()
                .any(|s| !rs.form_int(r, s).is_zero())
        })
    }
}

fn first_support_index<I: Scalar>(r: &Root<I>) -> usize {
    r.0.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX)
}

/// Build a subsystem from its positive roots. The simple basis consists of
/// the positives that are not sums of two positives of the subsystem;
/// components are typed by matching their Cartan matrices against the
/// canonical list.
pub fn subsystem_from_roots<I: Scalar>(
    rs: &RootSystem<I>,
    positives: Vec<Root<I>>,
) -> Result<Subsystem<I>> {
    let set: BTreeSet<Vec<I>> = positives.iter().map(|r| r.0.clone()).collect();
    let mut simples: Vec<Root<I>> = positives
        .iter()
        .filter(|p| {
            !positives
                .iter()
                .any(|x| x != *p && set.contains(&p.sub(x).0))
        })
        .cloned()
        .collect();
    simples.sort_by(|a, b| {
        first_support_index(a)
            .cmp(&first_support_index(b))
            .then(a.height().cmp(&b.height()))
            .then(a.0.cmp(&b.0))
    });

    // connected components of the simple basis under non-perpendicularity
    let k = simples.len();
    let mut comp_id = vec![usize::MAX; k];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..k {
        if comp_id[start] != usize::MAX {
            continue;
        }
        let cid = comps.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp_id[start] = cid;
        while let Some(i) = stack.pop() {
            members.push(i);
            for j in 0..k {
                if comp_id[j] == usize::MAX && !rs.form_int(&simples[i], &simples[j]).is_zero() {
                    comp_id[j] = cid;
                    stack.push(j);
                }
            }
        }
        members.sort();
        comps.push(members);
    }
    comps.sort_by_key(|members| {
        members
            .iter()
            .map(|&i| first_support_index(&simples[i]))
            .min()
            .unwrap_or(usize::MAX)
    });

    let mut components = Vec::new();
    for members in &comps {
        let csimples: Vec<Root<I>> = members.iter().map(|&i| simples[i].clone()).collect();
        let m = csimples.len();
        let mut cartan = vec![vec![I::zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                cartan[i][j] = rs.cartan_int(&csimples[i], &csimples[j])?;
            }
        }
        let stype = recognize_cartan(&cartan).ok_or_else(|| {
            Error::InternalInvariantViolation(format!(
                "unrecognized component Cartan matrix of rank {m}"
            ))
        })?;
        components.push(SubsystemComponent {
            simples: csimples,
            stype,
        });
    }

    Ok(Subsystem {
        positives,
        simples,
        components,
    })
}

/// The set of roots perpendicular to `delta`, as a typed subsystem.
pub fn perp_subsystem<I: Scalar>(rs: &RootSystem<I>, delta: &Root<I>) -> Result<Subsystem<I>> {
    rs.check_member(delta)?;
    let positives: Vec<Root<I>> = rs
        .positives()
        .iter()
        .filter(|r| rs.form_int(r, delta).is_zero())
        .cloned()
        .collect();
    subsystem_from_roots(rs, positives)
}

/// All elements of the Weyl group as lattice maps, by breadth-first closure
/// over the simple reflections. Guarded to rank <= 6.
pub fn weyl_group_elements<I: Scalar>(rs: &RootSystem<I>) -> Result<Vec<LatticeMap<I>>> {
    if rs.rank() > MAX_ENUM_RANK {
        return Err(Error::PreconditionViolated(format!(
            "Weyl group enumeration limited to rank <= {MAX_ENUM_RANK}"
        )));
    }
    let gens: Vec<LatticeMap<I>> = (0..rs.rank()).map(|i| simple_reflection(rs, i)).collect();
    let mut seen: HashSet<LatticeMap<I>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let id = LatticeMap::identity(rs.rank());
    seen.insert(id.clone());
    queue.push_back(id.clone());
    out.push(id);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let next = g.compose(&w);
            if seen.insert(next.clone()) {
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

/// Membership test in the Weyl group by exhaustive closure (rank <= 6).
pub fn is_weyl_element<I: Scalar>(rs: &RootSystem<I>, m: &LatticeMap<I>) -> Result<bool> {
    if !m.permutes_roots(rs) {
        return Ok(false);
    }
    let all = weyl_group_elements(rs)?;
    Ok(all.contains(m))
}

/// Is the Weyl element `m`, which must fix `delta`, a product of reflections
/// along roots perpendicular to `delta`? Checked by enumerating the
/// reflection group of the perpendicular subsystem.
pub fn chevalley_check<I: Scalar>(
    rs: &RootSystem<I>,
    m: &LatticeMap<I>,
    delta: &Root<I>,
) -> Result<bool> {
    rs.check_member(delta)?;
    if m.apply_root(delta) != *delta {
        return Err(Error::PreconditionViolated(format!(
            "map does not fix {delta}"
        )));
    }
    let sub = perp_subsystem(rs, delta)?;
    let gens: Vec<LatticeMap<I>> = sub
        .simples()
        .iter()
        .map(|s| reflection_matrix(rs, s))
        .collect::<Result<_>>()?;
    let mut seen: HashSet<LatticeMap<I>> = HashSet::new();
    let mut queue = VecDeque::new();
    let id = LatticeMap::identity(rs.rank());
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        if w == *m {
            return Ok(true);
        }
        for g in &gens {
            let next = g.compose(&w);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        if seen.len() > 2_000_000 {
            return Err(Error::InternalInvariantViolation(
                "perpendicular subsystem reflection group too large".into(),
            ));
        }
    }
    Ok(seen.contains(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::SystemType;

    type Rs = RootSystem<i64>;

    fn rs(name: &str) -> Rs {
        Rs::build(SystemType::parse(name).unwrap()).unwrap()
    }

    fn root(v: &[i64]) -> Root<i64> {
        Root::from_i64s(v)
    }

    #[test]
    fn reflection_basics() {
        let a2 = rs("A2");
        let a = a2.simple(0);
        let b = a2.simple(1);
        assert_eq!(reflect(&a2, &a, &a).unwrap(), a.neg());
        assert_eq!(reflect(&a2, &a, &b).unwrap(), root(&[1, 1]));
        assert!(matches!(
            reflect(&a2, &root(&[2, 0]), &b),
            Err(Error::NotARoot { .. })
        ));
    }

    #[test]
    fn simple_reflection_permutes_other_positives() {
        for name in ["A3", "B3", "D4", "G2"] {
            let s = rs(name);
            for i in 0..s.rank() {
                let m = simple_reflection(&s, i);
                let ai = s.simple(i);
                for p in s.positives() {
                    let img = m.apply_root(p);
                    if *p == ai {
                        assert_eq!(img, ai.neg());
                    } else {
                        assert!(s.is_positive_root(&img), "{name}: s_{i} moved {p} out");
                    }
                }
            }
        }
    }

    #[test]
    fn words_apply_right_to_left() {
        let a2 = rs("A2");
        let empty = WeylWord::empty();
        assert!(empty.to_matrix(&a2).is_identity());
        let squared = WeylWord::new(vec![1, 1], 2).unwrap();
        assert!(squared.to_matrix(&a2).is_identity());
        let w = WeylWord::new(vec![1, 2], 2).unwrap();
        assert_eq!(w.apply(&a2, &a2.simple(0)).unwrap(), a2.simple(1));
        // matrix route agrees with stepwise application
        assert_eq!(
            w.to_matrix(&a2).apply_root(&a2.simple(0)),
            a2.simple(1)
        );
    }

    #[test]
    fn dominant_representatives() {
        let a2 = rs("A2");
        let (dom, w) = dominant_representative(&a2, &root(&[1, 1])).unwrap();
        assert_eq!(dom, root(&[1, 1]));
        assert!(w.is_empty());

        let (dom, w) = dominant_representative(&a2, &root(&[-1, -1])).unwrap();
        assert_eq!(dom, root(&[1, 1]));
        assert_eq!(w.apply(&a2, &root(&[-1, -1])).unwrap(), dom);

        let d4 = rs("D4");
        let (dom, w) = dominant_representative(&d4, &d4.simple(0)).unwrap();
        assert_eq!(dom, root(&[1, 2, 1, 1]));
        assert_eq!(w.apply(&d4, &d4.simple(0)).unwrap(), dom);
    }

    #[test]
    fn orbits() {
        let a1 = rs("A1");
        assert_eq!(orbit(&a1, &a1.simple(0)).unwrap().len(), 2);
        let a2 = rs("A2");
        assert_eq!(orbit(&a2, &a2.simple(0)).unwrap().len(), 6);
        let b2 = rs("B2");
        assert_eq!(orbit(&b2, &b2.simple(1)).unwrap().len(), 4);
    }

    #[test]
    fn orbit_dominance() {
        for name in ["B2", "A3"] {
            let s = rs(name);
            for r in s.all_roots() {
                let (dom, _) = dominant_representative(&s, &r).unwrap();
                let orb = orbit(&s, &r).unwrap();
                assert!(orb.contains(&dom));
                let doms: Vec<_> = orb
                    .iter()
                    .filter(|x| {
                        (0..s.rank()).all(|i| s.form_int(&s.simple(i), x) >= 0)
                            && s.norm(x) == s.norm(&dom)
                    })
                    .collect();
                assert_eq!(doms.len(), 1);
                assert_eq!(*doms[0], dom);
            }
        }
    }

    #[test]
    fn involution_factorizations() {
        let d4 = rs("D4");
        let id = LatticeMap::<i64>::identity(4);
        assert_eq!(involution_factorization(&d4, &id).unwrap(), Some(vec![]));

        let delta1 = root(&[1, 2, 1, 1]);
        let s_delta = reflection_matrix(&d4, &delta1).unwrap();
        assert_eq!(
            involution_factorization(&d4, &s_delta).unwrap(),
            Some(vec![delta1.clone()])
        );

        let prod = s_delta.compose(&reflection_matrix(&d4, &d4.simple(0)).unwrap());
        let got = involution_factorization(&d4, &prod).unwrap().unwrap();
        let got_set: BTreeSet<_> = got.into_iter().collect();
        assert_eq!(
            got_set,
            [d4.simple(0), delta1].into_iter().collect::<BTreeSet<_>>()
        );

        // order 3 element is not an involution
        let w = WeylWord::new(vec![1, 2], 2).unwrap();
        let a2 = rs("A2");
        assert_eq!(involution_factorization(&a2, &w.to_matrix(&a2)).unwrap(), None);

        // the diagram flip is an involutive isometry outside the Weyl group
        let flip = LatticeMap::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(
            involution_factorization(&a2, &flip),
            Err(Error::NotWeyl(_))
        ));
    }

    #[test]
    fn perp_subsystems() {
        let d4 = rs("D4");
        let sub = perp_subsystem(&d4, &root(&[1, 2, 1, 1])).unwrap();
        assert_eq!(
            sub.simples().to_vec(),
            vec![d4.simple(0), d4.simple(2), d4.simple(3)]
        );
        assert_eq!(sub.components().len(), 3);
        for c in sub.components() {
            assert_eq!(c.stype, SystemType::parse("A1").unwrap());
        }

        let a2 = rs("A2");
        let sub = perp_subsystem(&a2, &root(&[1, 1])).unwrap();
        assert!(sub.is_empty());

        let a3 = rs("A3");
        let sub = perp_subsystem(&a3, &root(&[1, 1, 1])).unwrap();
        assert_eq!(sub.simples().to_vec(), vec![a3.simple(1)]);
        assert_eq!(sub.components().len(), 1);
    }

    #[test]
    fn chevalley_examples() {
        let d4 = rs("D4");
        let delta1 = root(&[1, 2, 1, 1]);
        let id = LatticeMap::<i64>::identity(4);
        assert!(chevalley_check(&d4, &id, &delta1).unwrap());
        assert!(chevalley_check(&d4, &simple_reflection(&d4, 0), &delta1).unwrap());

        // exhaustive over W(A2): every element fixing the highest root is a
        // product of reflections perpendicular to it
        let a2 = rs("A2");
        let delta = root(&[1, 1]);
        for w in weyl_group_elements(&a2).unwrap() {
            if w.apply_root(&delta) == delta {
                assert!(chevalley_check(&a2, &w, &delta).unwrap());
            }
        }
    }

    #[test]
    fn weyl_enumeration_sizes() {
        assert_eq!(weyl_group_elements(&rs("A2")).unwrap().len(), 6);
        assert_eq!(weyl_group_elements(&rs("B2")).unwrap().len(), 8);
        assert_eq!(weyl_group_elements(&rs("A3")).unwrap().len(), 24);
        assert_eq!(weyl_group_elements(&rs("D4")).unwrap().len(), 192);
        assert_eq!(weyl_group_elements(&rs("G2")).unwrap().len(), 12);
    }

    #[test]
    fn compiled_words_are_isometries() {
        for (name, letters) in [
            ("B3", vec![1, 3, 2, 3, 1]),
            ("A4", vec![4, 2, 1, 3, 2, 4]),
            ("D5", vec![5, 4, 3, 2, 1, 3, 5]),
            ("G2", vec![1, 2, 1, 2]),
            ("F4", vec![2, 3, 2, 4, 1]),
            ("E6", vec![1, 3, 5, 6, 2, 4, 2]),
        ] {
            let s = rs(name);
            let w = WeylWord::new(letters, s.rank()).unwrap();
            let m = w.to_matrix(&s);
            assert!(m.preserves_form(&s), "{name}");
            assert!(m.permutes_roots(&s), "{name}");
        }
    }

    #[test]
    fn unique_negated_simple() {
        // a Weyl element sending one simple root to a negative root and
        // every other positive root to a positive root is that simple
        // reflection (it has exactly one inversion)
        let a2 = rs("A2");
        for w in weyl_group_elements(&a2).unwrap() {
            for i in 0..2 {
                let img = w.apply_root(&a2.simple(i));
                let others_pos = a2
                    .positives()
                    .iter()
                    .filter(|p| **p != a2.simple(i))
                    .all(|p| a2.is_positive_root(&w.apply_root(p)));
                if a2.is_positive_root(&img.neg()) && others_pos {
                    assert_eq!(w, simple_reflection(&a2, i));
                }
            }
        }

        // constraining only the simple roots is not enough: the rotation
        // s1 s2 sends a2 to a negative root and a1 to a positive one
        let w = WeylWord::new(vec![1, 2], 2).unwrap().to_matrix(&a2);
        assert_eq!(w.apply_root(&a2.simple(0)), a2.simple(1));
        assert_eq!(
            w.apply_root(&a2.simple(1)),
            Root::from_i64s(&[-1, -1])
        );
        assert_ne!(w, simple_reflection(&a2, 1));
    }
}
