//! Strongly orthogonal root sets: vanishing sets of rational subspaces,
//! Kostant chain cascades, the parity function, the recursive normal-form
//! algorithm over generators commuting with a diagram automorphism, and the
//! two standard chain families of the A- and D-series.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::diagram::{induced_lattice_map, DiagramAut};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsys::{Family, Root, RootSystem};
use crate::scalar::{from_i64, Rat, Scalar};
use crate::weyl::{subsystem_from_roots, LatticeMap, WeylWord};
use num_traits::Zero;

/// An ordered list of distinct, pairwise strongly orthogonal positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoSet<I: Scalar> {
    roots: Vec<Root<I>>,
}

impl<I: Scalar> OrthoSet<I> {
    pub fn empty() -> Self {
        OrthoSet { roots: Vec::new() }
    }

    /// Validate positivity, distinctness and pairwise strong orthogonality.
    pub fn new(rs: &RootSystem<I>, roots: Vec<Root<I>>) -> Result<Self> {
        let mut seen: BTreeSet<Vec<I>> = BTreeSet::new();
        for r in &roots {
            if !rs.is_positive_root(r) {
                return Err(Error::PreconditionViolated(format!(
                    "{r} is not a positive root"
                )));
            }
            if !seen.insert(r.0.clone()) {
                return Err(Error::PreconditionViolated(format!("duplicate root {r}")));
            }
        }
        for (i, a) in roots.iter().enumerate() {
            for b in roots.iter().skip(i + 1) {
                if !rs.is_strongly_orthogonal(a, b)? {
                    return Err(Error::PreconditionViolated(format!(
                        "{a} and {b} are not strongly orthogonal"
                    )));
                }
                if !rs.form_int(a, b).is_zero() {
                    return Err(Error::InternalInvariantViolation(format!(
                        "strongly orthogonal pair {a}, {b} not perpendicular"
                    )));
                }
            }
        }
        Ok(OrthoSet { roots })
    }

    pub fn roots(&self) -> &[Root<I>] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: &Root<I>) -> bool {
        self.roots.contains(r)
    }

    pub fn as_sorted_set(&self) -> BTreeSet<Vec<I>> {
        self.roots.iter().map(|r| r.0.clone()).collect()
    }

    /// The product of the reflections along the member roots; the factors
    /// commute, so the order does not matter.
    pub fn reflection_product(&self, rs: &RootSystem<I>) -> Result<LatticeMap<I>> {
        let mut m = LatticeMap::identity(rs.rank());
        for r in &self.roots {
            m = crate::weyl::reflection_matrix(rs, r)?.compose(&m);
        }
        Ok(m)
    }
}

impl<I: Scalar> fmt::Display for OrthoSet<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, r) in self.roots.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// A rational subspace of the coordinate space, given by an independent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSubspace<I: Scalar> {
    basis: Vec<Vec<Rat<I>>>,
    ambient: usize,
}

impl<I: Scalar> RationalSubspace<I> {
    pub fn new(basis: Vec<Vec<Rat<I>>>, ambient: usize) -> Result<Self> {
        for v in &basis {
            if v.len() != ambient {
                return Err(Error::ShapeError {
                    expected: ambient,
                    got: v.len(),
                });
            }
        }
        if linalg::rank(&basis) != basis.len() {
            return Err(Error::PreconditionViolated(
                "subspace basis is linearly dependent".into(),
            ));
        }
        Ok(RationalSubspace { basis, ambient })
    }

    pub fn zero(ambient: usize) -> Self {
        RationalSubspace {
            basis: Vec::new(),
            ambient,
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Rat::zero(); ambient];
                v[i] = Rat::from_integer(I::one());
                v
            })
            .collect();
        RationalSubspace { basis, ambient }
    }

    pub fn basis(&self) -> &[Vec<Rat<I>>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn contains_vec(&self, v: &[Rat<I>]) -> bool {
        linalg::in_span(&self.basis, v)
    }
}

/// All positive roots vanishing on the subspace (pairing through the form).
/// The result is not automatically strongly orthogonal.
pub fn omega_from_subspace<I: Scalar>(
    rs: &RootSystem<I>,
    s: &RationalSubspace<I>,
) -> Result<Vec<Root<I>>> {
    if s.ambient() != rs.rank() {
        return Err(Error::ShapeError {
            expected: rs.rank(),
            got: s.ambient(),
        });
    }
    let mut out = Vec::new();
    for r in rs.positives() {
        let rv = linalg::to_rat_vec(&r.0);
        let mut vanishes = true;
        for x in s.basis() {
            if !rs.form_value_rat(&rv, x)?.is_zero() {
                vanishes = false;
                break;
            }
        }
        if vanishes {
            out.push(r.clone());
        }
    }
    Ok(out)
}

/// The chain cascade: repeatedly take the highest long root of each current
/// irreducible component and recurse into its perpendicular subsystem.
/// Breadth-first, components ordered by smallest supported simple index.
pub fn kostant_cascade<I: Scalar>(rs: &RootSystem<I>) -> Result<OrthoSet<I>> {
    let mut out: Vec<Root<I>> = Vec::new();
    let mut queue: VecDeque<Vec<Root<I>>> = VecDeque::new();
    let whole = subsystem_from_roots(rs, rs.positives().to_vec())?;
    for ci in 0..whole.components().len() {
        queue.push_back(whole.component_positives(rs, ci));
    }
    while let Some(positives) = queue.pop_front() {
        if positives.is_empty() {
            continue;
        }
        let sub = subsystem_from_roots(rs, positives.clone())?;
        let dominants: Vec<&Root<I>> = positives
            .iter()
            .filter(|p| sub.simples().iter().all(|s| rs.form_int(p, s) >= I::zero()))
            .collect();
        let delta = dominants
            .iter()
            .max_by(|a, b| {
                rs.norm(a)
                    .cmp(&rs.norm(b))
                    .then(a.height().cmp(&b.height()))
                    .then(b.0.cmp(&a.0))
            })
            .ok_or_else(|| {
                Error::InternalInvariantViolation("component without dominant root".into())
            })?
            .to_owned()
            .clone();
        out.push(delta.clone());
        let perp: Vec<Root<I>> = positives
            .iter()
            .filter(|p| rs.form_int(p, &delta).is_zero())
            .cloned()
            .collect();
        if !perp.is_empty() {
            let sub2 = subsystem_from_roots(rs, perp)?;
            for ci in 0..sub2.components().len() {
                queue.push_back(sub2.component_positives(rs, ci));
            }
        }
    }
    OrthoSet::new(rs, out)
}

/// The exact integer sum of Cartan pairings of `beta` against the set.
pub fn parity<I: Scalar>(rs: &RootSystem<I>, omega: &OrthoSet<I>, beta: &Root<I>) -> Result<I> {
    let mut acc = I::zero();
    for a in omega.roots() {
        acc = acc + rs.cartan_int(a, beta)?;
    }
    Ok(acc)
}

/// Decomposition check: the member roots span a subspace whose dimension,
/// plus that of the joint kernel of their pairings, is the full rank.
pub fn ortho_dimension_check<I: Scalar>(rs: &RootSystem<I>, omega: &OrthoSet<I>) -> Result<bool> {
    let n = rs.rank();
    let span: Vec<Vec<Rat<I>>> = omega
        .roots()
        .iter()
        .map(|r| linalg::to_rat_vec(&r.0))
        .collect();
    let span_dim = linalg::rank(&span);
    let pairing_rows: Vec<Vec<Rat<I>>> = omega
        .roots()
        .iter()
        .map(|r| {
            (0..n)
                .map(|j| Rat::from_integer(rs.form_int(r, &rs.simple(j))))
                .collect()
        })
        .collect();
    let kernel_dim = linalg::kernel_basis(&pairing_rows, n).len();
    Ok(span_dim + kernel_dim == n && span_dim == omega.len())
}

/// The chain of nested highest roots of the A-series under the flip:
/// delta_t = a_t + ... + a_{n-t+1}, for t = 1..=m.
pub fn a_series_chain<I: Scalar>(rs: &RootSystem<I>, m: usize) -> Result<OrthoSet<I>> {
    if rs.stype().family() != Family::A {
        return Err(Error::InvalidType(format!(
            "{} is not an A-series system",
            rs.stype()
        )));
    }
    let n = rs.rank();
    let max = n.div_ceil(2);
    if m < 1 || m > max {
        return Err(Error::InvalidCount { count: m, rank: n });
    }
    let mut roots = Vec::new();
    for t in 1..=m {
        let mut v = vec![I::zero(); n];
        for item in v.iter_mut().take(n - t + 1).skip(t - 1) {
            *item = I::one();
        }
        roots.push(rs.root_from_coeffs(v)?);
    }
    OrthoSet::new(rs, roots)
}

/// The D-series chain roots delta_t = a_t + 2(a_{t+1} + ... + a_{r-2}) +
/// a_{r-1} + a_r for the given odd indices t <= r-2.
pub fn d_series_chain<I: Scalar>(rs: &RootSystem<I>, indices: &[usize]) -> Result<OrthoSet<I>> {
    if rs.stype().family() != Family::D {
        return Err(Error::InvalidType(format!(
            "{} is not a D-series system",
            rs.stype()
        )));
    }
    let r = rs.rank();
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidIndex { index: w[0], rank: r });
        }
    }
    let mut roots = Vec::new();
    for &t in &sorted {
        if t % 2 == 0 || t > r - 2 || t == 0 {
            return Err(Error::InvalidIndex { index: t, rank: r });
        }
        roots.push(d_chain_root(rs, t)?);
    }
    OrthoSet::new(rs, roots)
}

/// The single chain root delta_t of a D-series system.
pub fn d_chain_root<I: Scalar>(rs: &RootSystem<I>, t: usize) -> Result<Root<I>> {
    let r = rs.rank();
    if t == 0 || t > r - 2 {
        return Err(Error::InvalidIndex { index: t, rank: r });
    }
    let two = from_i64::<I>(2);
    let mut v = vec![I::zero(); r];
    v[t - 1] = I::one();
    for item in v.iter_mut().take(r - 2).skip(t) {
        *item = two.clone();
    }
    v[r - 2] = I::one();
    v[r - 1] = I::one();
    rs.root_from_coeffs(v)
}

/// Generators of the Weyl group that commute with the induced map of `nu`:
/// the simple reflection at each fixed node, and the product of the simple
/// reflections over each orbit of pairwise perpendicular nodes.
pub fn nu_commuting_generators<I: Scalar>(
    rs: &RootSystem<I>,
    nu: &DiagramAut,
) -> Vec<(WeylWord, LatticeMap<I>)> {
    let mnu = induced_lattice_map(rs, nu);
    let mut out = Vec::new();
    for orbit in nu.orbits() {
        if orbit.len() > 1 {
            let perp = orbit.iter().all(|&i| {
                orbit
                    .iter()
                    .all(|&j| i == j || rs.cartan()[i][j].is_zero())
            });
            if !perp {
                continue;
            }
        }
        let letters: Vec<usize> = orbit.iter().map(|&i| i + 1).collect();
        let word = WeylWord::new(letters, rs.rank()).expect("letters in range");
        let m = word.to_matrix(rs);
        debug_assert_eq!(m.compose(&mnu), mnu.compose(&m));
        out.push((word, m));
    }
    out
}

/// Breadth-first search over the generator set: returns the (height, lex)
/// maximal element of the orbit of `start` together with the generator
/// sequence reaching it (in application order).
fn orbit_max<I: Scalar>(
    start: &Root<I>,
    gens: &[&(WeylWord, LatticeMap<I>)],
) -> (Root<I>, Vec<usize>) {
    let mut parent: HashMap<Vec<I>, Option<(Vec<I>, usize)>> = HashMap::new();
    parent.insert(start.0.clone(), None);
    let mut queue = VecDeque::new();
    queue.push_back(start.clone());
    let mut best = start.clone();
    while let Some(r) = queue.pop_front() {
        if r.height() > best.height() || (r.height() == best.height() && r.0 < best.0) {
            best = r.clone();
        }
        for (gi, (_, g)) in gens.iter().enumerate() {
            let img = g.apply_root(&r);
            if !parent.contains_key(&img.0) {
                parent.insert(img.0.clone(), Some((r.0.clone(), gi)));
                queue.push_back(img);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = best.0.clone();
    while let Some(Some((prev, gi))) = parent.get(&cur) {
        path.push(*gi);
        cur = prev.clone();
    }
    path.reverse();
    (best, path)
}

/// Conjugate a strongly orthogonal set of `nu`-fixed roots into its standard
/// position: stage by stage, the set member of maximal height in the first
/// component of the current perpendicular subsystem is moved to the highest
/// reachable root using only generators that commute with `nu` and fix the
/// roots already placed. Returns the word and the normalized set, with
/// `normalized = word(omega)` elementwise.
pub fn normal_form<I: Scalar>(
    rs: &RootSystem<I>,
    omega: &OrthoSet<I>,
    nu: &DiagramAut,
) -> Result<(WeylWord, OrthoSet<I>)> {
    let mnu = induced_lattice_map(rs, nu);
    for r in omega.roots() {
        if mnu.apply_root(r) != *r {
            return Err(Error::PreconditionViolated(format!(
                "{r} is not fixed by the diagram automorphism"
            )));
        }
    }
    if omega.is_empty() {
        return Ok((WeylWord::empty(), OrthoSet::empty()));
    }
    let gens = nu_commuting_generators(rs, nu);

    let mut placed: Vec<Root<I>> = Vec::new();
    let mut remaining: Vec<Root<I>> = omega.roots().to_vec();
    let mut total_word = WeylWord::empty();
    let mut total_map = LatticeMap::identity(rs.rank());

    while !remaining.is_empty() {
        let avail: Vec<Root<I>> = rs
            .positives()
            .iter()
            .filter(|p| placed.iter().all(|q| rs.form_int(p, q).is_zero()))
            .cloned()
            .collect();
        let sub = subsystem_from_roots(rs, avail)?;
        let mut chosen: Option<usize> = None;
        'comp: for ci in 0..sub.components().len() {
            let mut cands: Vec<usize> = (0..remaining.len())
                .filter(|&i| sub.component_of(rs, &remaining[i]) == Some(ci))
                .collect();
            if cands.is_empty() {
                continue;
            }
            cands.sort_by(|&x, &y| {
                remaining[y]
                    .height()
                    .cmp(&remaining[x].height())
                    .then(remaining[x].0.cmp(&remaining[y].0))
            });
            chosen = Some(cands[0]);
            break 'comp;
        }
        let ridx = chosen.ok_or_else(|| {
            Error::InternalInvariantViolation(
                "remaining root lies outside the available subsystem".into(),
            )
        })?;

        let fgens: Vec<&(WeylWord, LatticeMap<I>)> = gens
            .iter()
            .filter(|(_, g)| placed.iter().all(|p| g.apply_root(p) == *p))
            .collect();
        let (_, path) = orbit_max(&remaining[ridx], &fgens);
        let mut stage_word = WeylWord::empty();
        let mut stage_map = LatticeMap::identity(rs.rank());
        for gi in path {
            stage_word = fgens[gi].0.after(&stage_word);
            stage_map = fgens[gi].1.compose(&stage_map);
        }
        for r in remaining.iter_mut() {
            *r = stage_map.apply_root(r);
        }
        total_word = stage_word.after(&total_word);
        total_map = stage_map.compose(&total_map);
        placed.push(remaining.remove(ridx));
    }

    // soundness: the word maps the input set onto the output set elementwise
    let image: BTreeSet<Vec<I>> = omega
        .roots()
        .iter()
        .map(|r| total_map.apply_root(r).0)
        .collect();
    let placed_set: BTreeSet<Vec<I>> = placed.iter().map(|r| r.0.clone()).collect();
    if image != placed_set {
        return Err(Error::InternalInvariantViolation(
            "normal form image mismatch".into(),
        ));
    }
    debug_assert_eq!(total_word.to_matrix(rs), total_map);
    Ok((total_word, OrthoSet::new(rs, placed)?))
}

/// The two standard forms of the D-series classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DNormalForm {
    /// {delta_1, a_1, delta_3, a_3, ..., delta_m, a_m}, m odd.
    Form1 { m: usize },
    /// {delta_1, delta_3, ..., delta_k}, k the maximal odd integer <= r-2.
    Form2 { k: usize },
}

impl fmt::Display for DNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DNormalForm::Form1 { m } => write!(f, "form1(m={m})"),
            DNormalForm::Form2 { k } => write!(f, "form2(k={k})"),
        }
    }
}

/// Result of classifying a D-series strongly orthogonal set.
#[derive(Debug, Clone)]
pub struct DClassification<I: Scalar> {
    pub form: DNormalForm,
    pub word: WeylWord,
    pub normalized: OrthoSet<I>,
}

/// Is `nu` the canonical D-series flip (swap of the two fork nodes)?
pub fn is_canonical_flip(rank: usize, nu: &DiagramAut) -> bool {
    nu.rank() == rank
        && (0..rank).all(|i| {
            let expect = if i == rank - 2 {
                rank - 1
            } else if i == rank - 1 {
                rank - 2
            } else {
                i
            };
            nu.apply(i) == expect
        })
}

/// Classify a nonempty flip-fixed strongly orthogonal set of a D-series
/// system into one of the two standard forms. The evenness precondition on
/// the parity function at the strictly interior even-indexed simple roots is
/// checked on the normalized set; passing sets that match neither form are
/// reported as counterexamples rather than silently accepted.
pub fn classify_d_normal_form<I: Scalar>(
    rs: &RootSystem<I>,
    omega: &OrthoSet<I>,
    nu: &DiagramAut,
) -> Result<DClassification<I>> {
    if rs.stype().family() != Family::D {
        return Err(Error::InvalidType(format!(
            "{} is not a D-series system",
            rs.stype()
        )));
    }
    let r = rs.rank();
    if !is_canonical_flip(r, nu) {
        return Err(Error::PreconditionViolated(
            "diagram automorphism is not the canonical fork flip".into(),
        ));
    }
    if omega.is_empty() {
        return Err(Error::PreconditionViolated(
            "classification requires a nonempty set".into(),
        ));
    }
    let (word, normalized) = normal_form(rs, omega, nu)?;

    let mut idx = 2usize;
    while idx + 3 <= r {
        let p = parity(rs, &normalized, &rs.simple(idx - 1))?;
        if p.is_odd() {
            return Err(Error::PreconditionViolated(format!(
                "interior parity odd at simple root {idx}"
            )));
        }
        idx += 2;
    }

    let got = normalized.as_sorted_set();
    let mut m = 1usize;
    while m <= r - 2 {
        let mut expect: BTreeSet<Vec<I>> = BTreeSet::new();
        for t in (1..=m).step_by(2) {
            expect.insert(d_chain_root(rs, t)?.0);
            expect.insert(rs.simple(t - 1).0.clone());
        }
        if got == expect {
            return Ok(DClassification {
                form: DNormalForm::Form1 { m },
                word,
                normalized,
            });
        }
        m += 2;
    }
    let k = if (r - 2) % 2 == 1 { r - 2 } else { r - 3 };
    let mut expect: BTreeSet<Vec<I>> = BTreeSet::new();
    for t in (1..=k).step_by(2) {
        expect.insert(d_chain_root(rs, t)?.0);
    }
    if got == expect {
        return Ok(DClassification {
            form: DNormalForm::Form2 { k },
            word,
            normalized,
        });
    }
    Err(Error::CounterexampleFound(format!(
        "set {omega} normalizes to {normalized}, which is neither standard form"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::SystemType;
    use crate::weyl::reflection_matrix;
    use num_integer::Integer as _;

    type Rs = RootSystem<i64>;

    fn rs(name: &str) -> Rs {
        Rs::build(SystemType::parse(name).unwrap()).unwrap()
    }

    fn root(v: &[i64]) -> Root<i64> {
        Root::from_i64s(v)
    }

    fn flip(rs_: &Rs) -> DiagramAut {
        let r = rs_.rank();
        let mut perm: Vec<usize> = (0..r).collect();
        perm.swap(r - 2, r - 1);
        DiagramAut::new(rs_, perm).unwrap()
    }

    #[test]
    fn ortho_set_validation() {
        let a2 = rs("A2");
        assert!(OrthoSet::new(&a2, vec![a2.simple(0), a2.simple(1)]).is_err());
        let d4 = rs("D4");
        let ok = OrthoSet::new(&d4, vec![root(&[1, 2, 1, 1]), d4.simple(0)]).unwrap();
        assert_eq!(ok.len(), 2);
    }

    #[test]
    fn omega_from_subspace_cases() {
        let d4 = rs("D4");
        assert!(omega_from_subspace(&d4, &RationalSubspace::full(4))
            .unwrap()
            .is_empty());
        assert_eq!(
            omega_from_subspace(&d4, &RationalSubspace::zero(4)).unwrap(),
            d4.positives().to_vec()
        );

        let delta1 = root(&[1, 2, 1, 1]);
        let prod = reflection_matrix(&d4, &delta1)
            .unwrap()
            .compose(&reflection_matrix(&d4, &d4.simple(0)).unwrap());
        // fixed space of the product reflection
        let n = 4;
        let rows: Vec<Vec<Rat<i64>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut e = vec![0i64; n];
                        e[j] = 1;
                        let v = prod.apply_vec(&e);
                        Rat::from_integer(v[i] - if i == j { 1 } else { 0 })
                    })
                    .collect()
            })
            .collect();
        let kernel = linalg::kernel_basis(&rows, n);
        let s = RationalSubspace::new(kernel, 4).unwrap();
        assert_eq!(s.dim(), 2);
        let omega = omega_from_subspace(&d4, &s).unwrap();
        assert_eq!(omega, vec![d4.simple(0), delta1]);
    }

    #[test]
    fn cascades() {
        let a1 = rs("A1");
        assert_eq!(kostant_cascade(&a1).unwrap().roots(), &[a1.simple(0)]);

        let a3 = rs("A3");
        assert_eq!(
            kostant_cascade(&a3).unwrap().roots(),
            &[root(&[1, 1, 1]), a3.simple(1)]
        );

        let d4 = rs("D4");
        assert_eq!(
            kostant_cascade(&d4).unwrap().roots(),
            &[root(&[1, 2, 1, 1]), d4.simple(0), d4.simple(2), d4.simple(3)]
        );
    }

    #[test]
    fn cascade_is_maximal_rank_le_6() {
        // no positive root can be added while staying pairwise strongly
        // orthogonal
        for name in ["A2", "A4", "B3", "C4", "D4", "D5", "G2", "F4", "E6"] {
            let s = rs(name);
            let c = kostant_cascade(&s).unwrap();
            for p in s.positives() {
                if c.contains(p) {
                    continue;
                }
                let extendable = c
                    .roots()
                    .iter()
                    .all(|r| s.is_strongly_orthogonal(r, p).unwrap_or(false));
                assert!(!extendable, "{name}: cascade extends by {p}");
            }
        }
    }

    #[test]
    fn cascade_dimension_decomposition() {
        for name in ["A4", "B3", "C4", "D5", "G2", "F4"] {
            let s = rs(name);
            let c = kostant_cascade(&s).unwrap();
            assert!(ortho_dimension_check(&s, &c).unwrap(), "{name}");
        }
    }

    #[test]
    fn parity_values() {
        let d4 = rs("D4");
        let empty = OrthoSet::empty();
        for b in d4.positives() {
            assert_eq!(parity(&d4, &empty, b).unwrap(), 0);
        }
        let form1 = OrthoSet::new(&d4, vec![root(&[1, 2, 1, 1]), d4.simple(0)]).unwrap();
        assert_eq!(parity(&d4, &form1, &d4.simple(1)).unwrap(), 0);

        let d6 = rs("D6");
        let form2 = d_series_chain(&d6, &[1, 3]).unwrap();
        assert!(parity(&d6, &form2, &d6.simple(3)).unwrap().is_odd());
    }

    #[test]
    fn a_chains() {
        let a5 = rs("A5");
        let c = a_series_chain(&a5, 2).unwrap();
        assert_eq!(
            c.roots(),
            &[root(&[1, 1, 1, 1, 1]), root(&[0, 1, 1, 1, 0])]
        );
        let a1 = rs("A1");
        assert_eq!(a_series_chain(&a1, 1).unwrap().roots(), &[a1.simple(0)]);
        let a4 = rs("A4");
        let c = a_series_chain(&a4, 2).unwrap();
        assert_eq!(c.roots(), &[root(&[1, 1, 1, 1]), root(&[0, 1, 1, 0])]);
        assert!(matches!(
            a_series_chain(&a4, 3),
            Err(Error::InvalidCount { .. })
        ));
    }

    #[test]
    fn d_chains() {
        let d4 = rs("D4");
        assert_eq!(
            d_series_chain(&d4, &[1]).unwrap().roots(),
            &[root(&[1, 2, 1, 1])]
        );
        let d5 = rs("D5");
        assert_eq!(
            d_series_chain(&d5, &[1, 3]).unwrap().roots(),
            &[root(&[1, 2, 2, 1, 1]), root(&[0, 0, 1, 1, 1])]
        );
        let d6 = rs("D6");
        let c = d_series_chain(&d6, &[1, 3]).unwrap();
        assert_eq!(c.roots()[1], root(&[0, 0, 1, 2, 1, 1]));
        assert!(matches!(
            d_series_chain(&d6, &[2]),
            Err(Error::InvalidIndex { .. })
        ));
        assert!(matches!(
            d_series_chain(&d6, &[5]),
            Err(Error::InvalidIndex { .. })
        ));
    }

    #[test]
    fn normal_form_empty_and_single() {
        let d5 = rs("D5");
        let nu = flip(&d5);
        let (w, nf) = normal_form(&d5, &OrthoSet::empty(), &nu).unwrap();
        assert!(w.is_empty() && nf.is_empty());

        // any single flip-fixed root normalizes to the highest root
        let single = OrthoSet::new(&d5, vec![root(&[0, 1, 2, 1, 1])]).unwrap();
        let (w, nf) = normal_form(&d5, &single, &nu).unwrap();
        assert_eq!(nf.roots(), &[root(&[1, 2, 2, 1, 1])]);
        assert_eq!(
            w.apply(&d5, &root(&[0, 1, 2, 1, 1])).unwrap(),
            root(&[1, 2, 2, 1, 1])
        );
    }

    #[test]
    fn normal_form_rejects_unfixed_roots() {
        let d5 = rs("D5");
        let nu = flip(&d5);
        let not_fixed = OrthoSet::new(&d5, vec![d5.simple(3)]).unwrap();
        assert!(matches!(
            normal_form(&d5, &not_fixed, &nu),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn normal_form_idempotent_and_conjugation_stable() {
        let d7 = rs("D7");
        let nu = flip(&d7);
        let chain = d_series_chain(&d7, &[1, 3, 5]).unwrap();
        let (w, nf) = normal_form(&d7, &chain, &nu).unwrap();
        assert!(w.is_empty(), "already normal, got word {w}");
        assert_eq!(nf.as_sorted_set(), chain.as_sorted_set());

        // conjugate by a nu-commuting word and renormalize
        let gens = nu_commuting_generators(&d7, &nu);
        let conj = gens[1].1.compose(&gens[3].1).compose(&gens[0].1);
        let moved: Vec<Root<i64>> = chain
            .roots()
            .iter()
            .map(|r| {
                let img = conj.apply_root(r);
                if d7.is_positive_root(&img) {
                    img
                } else {
                    img.neg()
                }
            })
            .collect();
        let moved = OrthoSet::new(&d7, moved).unwrap();
        let (_, nf2) = normal_form(&d7, &moved, &nu).unwrap();
        assert_eq!(nf2.as_sorted_set(), chain.as_sorted_set());
    }

    #[test]
    fn classify_forms() {
        let d4 = rs("D4");
        let nu4 = flip(&d4);
        let f1 = OrthoSet::new(&d4, vec![root(&[1, 2, 1, 1]), d4.simple(0)]).unwrap();
        let c = classify_d_normal_form(&d4, &f1, &nu4).unwrap();
        assert_eq!(c.form, DNormalForm::Form1 { m: 1 });

        let d5 = rs("D5");
        let nu5 = flip(&d5);
        let f2 = d_series_chain(&d5, &[1, 3]).unwrap();
        let c = classify_d_normal_form(&d5, &f2, &nu5).unwrap();
        assert_eq!(c.form, DNormalForm::Form2 { k: 3 });

        // conjugated form-1 set in D6 classifies back to form 1
        let d6 = rs("D6");
        let nu6 = flip(&d6);
        let base: Vec<Root<i64>> = vec![
            d_chain_root(&d6, 1).unwrap(),
            d6.simple(0),
            d_chain_root(&d6, 3).unwrap(),
            d6.simple(2),
        ];
        let gens = nu_commuting_generators(&d6, &nu6);
        let m = gens[2].1.compose(&gens[1].1).compose(&gens[4].1);
        let moved: Vec<Root<i64>> = base
            .iter()
            .map(|r| {
                let img = m.apply_root(r);
                if d6.is_positive_root(&img) {
                    img
                } else {
                    img.neg()
                }
            })
            .collect();
        let moved = OrthoSet::new(&d6, moved).unwrap();
        let c = classify_d_normal_form(&d6, &moved, &nu6).unwrap();
        assert_eq!(c.form, DNormalForm::Form1 { m: 3 });
    }

    #[test]
    fn classify_rejects_odd_interior_parity() {
        // {delta_1} alone in D5 has odd parity at a_2 after normalization
        let d5 = rs("D5");
        let nu5 = flip(&d5);
        let single = OrthoSet::new(&d5, vec![root(&[1, 2, 2, 1, 1])]).unwrap();
        assert!(matches!(
            classify_d_normal_form(&d5, &single, &nu5),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
