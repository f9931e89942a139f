//! Simple root systems with exact integer arithmetic.
//!
//! Roots are integer coefficient vectors over the simple-root basis. The
//! symmetrized form `B` normalizes short roots to squared length 2 (long
//! roots then have squared length 4, or 6 for G2), so every pairing used
//! here is an exact integer or rational. Positive roots are generated from
//! the Cartan matrix by the usual root-string closure, ordered by height
//! and then lexicographically.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{from_i64, rat, Rat, Scalar};
use num_traits::Zero;

/// The seven families of irreducible reduced root systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c.to_ascii_uppercase() {
            'A' => Some(Family::A),
            'B' => Some(Family::B),
            'C' => Some(Family::C),
            'D' => Some(Family::D),
            'E' => Some(Family::E),
            'F' => Some(Family::F),
            'G' => Some(Family::G),
            _ => None,
        }
    }
}

/// A formal family/rank symbol, unconstrained. Classification tables use
/// degenerate symbols such as `b1`, `c2` or `a0`; [`TypeSymbol::canonicalize`]
/// maps the ones that denote actual irreducible systems to their canonical
/// [`SystemType`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeSymbol {
    pub family: Family,
    pub rank: usize,
}

impl TypeSymbol {
    pub fn new(family: Family, rank: usize) -> Self {
        TypeSymbol { family, rank }
    }

    /// Canonical irreducible type, identifying B1 = C1 = A1, C2 = B2 and
    /// D3 = A3. Returns `None` for symbols that are trivial or reducible
    /// (rank 0, D2).
    pub fn canonicalize(self) -> Option<SystemType> {
        let TypeSymbol { family, rank } = self;
        if rank == 0 {
            return None;
        }
        let (f, r) = match (family, rank) {
            (Family::B, 1) | (Family::C, 1) => (Family::A, 1),
            (Family::C, 2) => (Family::B, 2),
            (Family::D, 2) => return None,
            (Family::D, 3) => (Family::A, 3),
            (f, r) => (f, r),
        };
        SystemType::new(f, r).ok()
    }
}

impl fmt::Display for TypeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A validated irreducible system type. `C2` is canonicalized to `B2` on
/// construction; `D3` is rejected (construct `A3` instead).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SystemType {
    family: Family,
    rank: usize,
}

impl SystemType {
    pub fn new(family: Family, rank: usize) -> Result<SystemType> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => {
                if rank == 2 {
                    return SystemType::new(Family::B, 2);
                }
                rank >= 3
            }
            Family::D => {
                if rank == 3 {
                    return Err(Error::InvalidType(
                        "D3 is canonically A3; construct A3 instead".into(),
                    ));
                }
                rank >= 4
            }
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SystemType { family, rank })
        } else {
            Err(Error::InvalidType(format!(
                "{}{rank} is out of bounds",
                family.letter()
            )))
        }
    }

    /// Parse a name like "D4" or "e6" (case-insensitive).
    pub fn parse(s: &str) -> Result<SystemType> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::InvalidType(format!("cannot parse type {s:?}")))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(format!("cannot parse rank in {s:?}")))?;
        SystemType::new(fam, rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn symbol(&self) -> TypeSymbol {
        TypeSymbol::new(self.family, self.rank)
    }

    /// Number of roots by the classical closed forms.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::G => 12,
            Family::F => 48,
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
        }
    }
}

impl fmt::Display for SystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A root as an integer coefficient vector over the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root<I>(pub Vec<I>);

impl<I: Scalar> Root<I> {
    pub fn new(coeffs: Vec<I>) -> Self {
        Root(coeffs)
    }

    pub fn coeffs(&self) -> &[I] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn neg(&self) -> Root<I> {
        Root(self.0.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &Root<I>) -> Root<I> {
        Root(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Root<I>) -> Root<I> {
        Root(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    /// Sum of coefficients; positive on positive roots.
    pub fn height(&self) -> I {
        self.0.iter().fold(I::zero(), |acc, c| acc + c.clone())
    }

    pub fn is_zero_vec(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        Root(v.iter().map(|&c| from_i64(c)).collect())
    }
}

impl<I: Scalar> fmt::Display for Root<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An irreducible root system: Cartan matrix, symmetrized form, and the full
/// positive root list. Immutable after construction.
#[derive(Debug, Clone)]
pub struct RootSystem<I: Scalar> {
    stype: SystemType,
    cartan: Vec<Vec<I>>,
    form: Vec<Vec<I>>,
    positives: Vec<Root<I>>,
    pos_index: HashMap<Vec<I>, usize>,
    highest_long: Root<I>,
    highest_short: Root<I>,
}

/// Cartan matrix A with `A[i][j] = 2<a_i,a_j>/<a_i,a_i>` (0-based indices).
/// D-series labeling: chain a_1..a_{r-2} with the fork a_{r-1}, a_r attached
/// to a_{r-2}. E-series labeling: chain 1-3-4-...-r with node 2 attached to
/// node 4.
fn cartan_matrix<I: Scalar>(stype: SystemType) -> Vec<Vec<I>> {
    let n = stype.rank();
    let mut a: Vec<Vec<i64>> = vec![vec![0; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    let mut link = |i: usize, j: usize, down: i64, up: i64| {
        a[i][j] = down;
        a[j][i] = up;
    };
    match stype.family() {
        Family::A => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1, -1, -1);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                link(i, i + 1, -1, -1);
            }
            // last root short: 2<a_n, a_{n-1}>/<a_n, a_n> = -2
            a[n - 1][n - 2] = -2;
        }
        Family::C => {
            for i in 0..n - 1 {
                link(i, i + 1, -1, -1);
            }
            // last root long: the short neighbor pairs to -2 against it
            a[n - 2][n - 1] = -2;
        }
        Family::D => {
            for i in 0..n - 3 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 2, -1, -1);
            link(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            let chain: Vec<usize> = std::iter::once(0).chain(2..n).collect();
            for w in chain.windows(2) {
                link(w[0], w[1], -1, -1);
            }
            link(1, 3, -1, -1);
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Family::G => {
            link(0, 1, -1, -3);
        }
    }
    a.into_iter()
        .map(|row| row.into_iter().map(from_i64).collect())
        .collect()
}

/// Half squared lengths `d_i = <a_i,a_i>/2` under the normalization that
/// short roots have squared length 2.
fn half_lengths(stype: SystemType) -> Vec<i64> {
    let n = stype.rank();
    match stype.family() {
        Family::A | Family::D | Family::E => vec![1; n],
        Family::B => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            d
        }
        Family::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            d
        }
        Family::F => vec![2, 2, 1, 1],
        Family::G => vec![3, 1],
    }
}

impl<I: Scalar> RootSystem<I> {
    /// Construct the full root system for `stype`.
    pub fn build(stype: SystemType) -> Result<RootSystem<I>> {
        let n = stype.rank();
        let cartan = cartan_matrix::<I>(stype);
        let d = half_lengths(stype);
        let mut form = vec![vec![I::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                form[i][j] = from_i64::<I>(d[i]) * cartan[i][j].clone();
            }
        }
        for i in 0..n {
            for j in 0..n {
                if form[i][j] != form[j][i] {
                    return Err(Error::InternalInvariantViolation(format!(
                        "form not symmetric at ({i},{j}) for {stype}"
                    )));
                }
            }
        }

        // Positive roots level by level: beta + a_i is a root iff
        // q = p - 2<beta,a_i>/<a_i,a_i> is positive, where p counts how far
        // the string extends below beta.
        let mut known: HashMap<Vec<I>, ()> = HashMap::new();
        let mut levels: Vec<Vec<Vec<I>>> = Vec::new();
        let simples: Vec<Vec<I>> = (0..n)
            .map(|i| {
                let mut v = vec![I::zero(); n];
                v[i] = I::one();
                v
            })
            .collect();
        for s in &simples {
            known.insert(s.clone(), ());
        }
        levels.push(simples.clone());
        let mut guard = 0usize;
        loop {
            guard += 1;
            if guard > 64 {
                return Err(Error::InternalInvariantViolation(
                    "root generation did not terminate".into(),
                ));
            }
            let last = levels.last().unwrap().clone();
            let mut next: Vec<Vec<I>> = Vec::new();
            for beta in &last {
                for i in 0..n {
                    let c = (0..n).fold(I::zero(), |acc, j| {
                        acc + cartan[i][j].clone() * beta[j].clone()
                    });
                    let mut p = I::zero();
                    let mut v = beta.clone();
                    loop {
                        v[i] = v[i].clone() - I::one();
                        if v.iter().all(|x| x >= &I::zero()) && known.contains_key(&v) {
                            p = p + I::one();
                        } else {
                            break;
                        }
                    }
                    let q = p - c;
                    if q > I::zero() {
                        let mut up = beta.clone();
                        up[i] = up[i].clone() + I::one();
                        if !known.contains_key(&up) {
                            known.insert(up.clone(), ());
                            next.push(up);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort();
            next.dedup();
            levels.push(next);
        }

        let mut positives: Vec<Root<I>> = levels
            .into_iter()
            .flatten()
            .map(Root::new)
            .collect();
        positives.sort_by(|a, b| a.height().cmp(&b.height()).then(a.0.cmp(&b.0)));
        let pos_index: HashMap<Vec<I>, usize> = positives
            .iter()
            .enumerate()
            .map(|(k, r)| (r.0.clone(), k))
            .collect();

        let mut rs = RootSystem {
            stype,
            cartan,
            form,
            positives,
            pos_index,
            highest_long: Root::new(vec![I::zero(); n]),
            highest_short: Root::new(vec![I::zero(); n]),
        };
        let (hl, hs) = rs.compute_dominants()?;
        rs.highest_long = hl;
        rs.highest_short = hs;
        Ok(rs)
    }

    fn compute_dominants(&self) -> Result<(Root<I>, Root<I>)> {
        let mut dom: Vec<&Root<I>> = Vec::new();
        for r in &self.positives {
            let ok = (0..self.rank()).all(|i| {
                self.form_int(&Root::new(self.simple_vec(i)), r) >= I::zero()
            });
            if ok {
                dom.push(r);
            }
        }
        if dom.is_empty() || dom.len() > 2 {
            return Err(Error::InternalInvariantViolation(format!(
                "{} dominant roots in {}",
                dom.len(),
                self.stype
            )));
        }
        let norm = |r: &Root<I>| self.form_int(r, r);
        let long = dom
            .iter()
            .max_by(|a, b| norm(a).cmp(&norm(b)))
            .unwrap()
            .to_owned()
            .clone();
        let short = dom
            .iter()
            .min_by(|a, b| norm(a).cmp(&norm(b)))
            .unwrap()
            .to_owned()
            .clone();
        Ok((long, short))
    }

    fn simple_vec(&self, i: usize) -> Vec<I> {
        let mut v = vec![I::zero(); self.rank()];
        v[i] = I::one();
        v
    }

    pub fn stype(&self) -> SystemType {
        self.stype
    }

    pub fn rank(&self) -> usize {
        self.stype.rank()
    }

    pub fn cartan(&self) -> &[Vec<I>] {
        &self.cartan
    }

    /// Symmetrized form matrix `B[i][j] = <a_i,a_j>`; integral under the
    /// chosen normalization, with diagonal entries in {2, 4, 6}.
    pub fn form(&self) -> &[Vec<I>] {
        &self.form
    }

    /// The i-th simple root (0-based).
    pub fn simple(&self, i: usize) -> Root<I> {
        assert!(i < self.rank(), "simple root index out of range");
        Root::new(self.simple_vec(i))
    }

    pub fn simples(&self) -> Vec<Root<I>> {
        (0..self.rank()).map(|i| self.simple(i)).collect()
    }

    pub fn positives(&self) -> &[Root<I>] {
        &self.positives
    }

    /// All roots, positives first then their negatives.
    pub fn all_roots(&self) -> Vec<Root<I>> {
        self.positives
            .iter()
            .cloned()
            .chain(self.positives.iter().map(Root::neg))
            .collect()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positives.len()
    }

    pub fn contains(&self, r: &Root<I>) -> bool {
        if r.len() != self.rank() {
            return false;
        }
        self.pos_index.contains_key(&r.0) || self.pos_index.contains_key(&r.neg().0)
    }

    pub fn is_positive_root(&self, r: &Root<I>) -> bool {
        r.len() == self.rank() && self.pos_index.contains_key(&r.0)
    }

    pub fn check_member(&self, r: &Root<I>) -> Result<()> {
        if self.contains(r) {
            Ok(())
        } else {
            Err(Error::NotARoot {
                system: self.stype.to_string(),
                vector: r.to_string(),
            })
        }
    }

    fn check_shape(&self, len: usize) -> Result<()> {
        if len == self.rank() {
            Ok(())
        } else {
            Err(Error::ShapeError {
                expected: self.rank(),
                got: len,
            })
        }
    }

    /// `<a,b>` for integer coefficient vectors.
    pub fn form_int(&self, a: &Root<I>, b: &Root<I>) -> I {
        let n = self.rank();
        let mut acc = I::zero();
        for i in 0..n {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc = acc + a.0[i].clone() * self.form[i][j].clone() * b.0[j].clone();
            }
        }
        acc
    }

    /// `<a,b>` as an exact rational; accepts any lattice vectors of the
    /// right dimension.
    pub fn form_value(&self, a: &Root<I>, b: &Root<I>) -> Result<Rat<I>> {
        self.check_shape(a.len())?;
        self.check_shape(b.len())?;
        Ok(rat(self.form_int(a, b)))
    }

    /// `<x,y>` for rational coordinate vectors.
    pub fn form_value_rat(&self, x: &[Rat<I>], y: &[Rat<I>]) -> Result<Rat<I>> {
        self.check_shape(x.len())?;
        self.check_shape(y.len())?;
        let n = self.rank();
        let mut acc = Rat::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc = acc + x[i].clone() * rat(self.form[i][j].clone()) * y[j].clone();
            }
        }
        Ok(acc)
    }

    /// Squared length `<r,r>`.
    pub fn norm(&self, r: &Root<I>) -> I {
        self.form_int(r, r)
    }

    /// The exact integer `2<a,b>/<a,a>` for roots `a`, `b`.
    pub fn cartan_int(&self, a: &Root<I>, b: &Root<I>) -> Result<I> {
        self.check_member(a)?;
        self.check_member(b)?;
        let two = I::one() + I::one();
        let num = two * self.form_int(a, b);
        let den = self.norm(a);
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::InternalInvariantViolation(format!(
                "non-integral Cartan pairing for {a}, {b}"
            )));
        }
        Ok(q)
    }

    /// The a-string through b: maximal p, q >= 0 with b - p a, ..., b + q a
    /// all roots. Satisfies p - q = 2<b,a>/<a,a>.
    pub fn root_string(&self, a: &Root<I>, b: &Root<I>) -> Result<(usize, usize)> {
        self.check_member(a)?;
        self.check_member(b)?;
        if b == a || *b == a.neg() {
            return Err(Error::DegenerateString);
        }
        let mut p = 0usize;
        let mut v = b.sub(a);
        while self.contains(&v) {
            p += 1;
            v = v.sub(a);
        }
        let mut q = 0usize;
        let mut w = b.add(a);
        while self.contains(&w) {
            q += 1;
            w = w.add(a);
        }
        let diff = from_i64::<I>(p as i64) - from_i64::<I>(q as i64);
        if diff != self.cartan_int(a, b)? {
            return Err(Error::InternalInvariantViolation(format!(
                "string law failed for {a}, {b}"
            )));
        }
        Ok((p, q))
    }

    /// True iff neither a+b nor a-b is a root.
    pub fn is_strongly_orthogonal(&self, a: &Root<I>, b: &Root<I>) -> Result<bool> {
        self.check_member(a)?;
        self.check_member(b)?;
        if b == a || *b == a.neg() {
            return Err(Error::DegeneratePair);
        }
        Ok(!self.contains(&a.add(b)) && !self.contains(&a.sub(b)))
    }

    /// The at most two dominant roots: (highest long, highest short). Equal
    /// when the system is simply laced.
    pub fn dominant_roots(&self) -> (Root<I>, Root<I>) {
        (self.highest_long.clone(), self.highest_short.clone())
    }

    pub fn highest_long(&self) -> &Root<I> {
        &self.highest_long
    }

    pub fn highest_short(&self) -> &Root<I> {
        &self.highest_short
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.stype.family(), Family::A | Family::D | Family::E)
    }

    /// Construct a member root from raw coefficients, validating membership.
    pub fn root_from_coeffs(&self, coeffs: Vec<I>) -> Result<Root<I>> {
        self.check_shape(coeffs.len())?;
        let r = Root::new(coeffs);
        self.check_member(&r)?;
        Ok(r)
    }
}

/// Match a Cartan matrix against the canonical irreducible types, up to
/// simultaneous permutation of the index set. Returns the canonical type.
pub fn recognize_cartan<I: Scalar>(c: &[Vec<I>]) -> Option<SystemType> {
    let r = c.len();
    if r == 0 {
        return None;
    }
    let mut candidates: Vec<SystemType> = Vec::new();
    let mut push = |f, n| {
        if let Ok(t) = SystemType::new(f, n) {
            candidates.push(t);
        }
    };
    push(Family::A, r);
    push(Family::B, r);
    push(Family::C, r);
    push(Family::D, r);
    push(Family::E, r);
    push(Family::F, r);
    push(Family::G, r);
    for t in candidates {
        let canon = cartan_matrix::<I>(t);
        if cartan_permutation(&canon, c).is_some() {
            return Some(t);
        }
    }
    None
}

/// Find a permutation `p` with `c[p[i]][p[j]] == canon[i][j]`, if one exists.
pub fn cartan_permutation<I: Scalar>(canon: &[Vec<I>], c: &[Vec<I>]) -> Option<Vec<usize>> {
    let n = canon.len();
    if c.len() != n {
        return None;
    }
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn backtrack<I: Scalar>(
        canon: &[Vec<I>],
        c: &[Vec<I>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = perm.len();
        if i == canon.len() {
            return true;
        }
        for cand in 0..canon.len() {
            if used[cand] {
                continue;
            }
            let ok = (0..i).all(|j| {
                c[cand][perm[j]] == canon[i][j] && c[perm[j]][cand] == canon[j][i]
            }) && c[cand][cand] == canon[i][i];
            if ok {
                used[cand] = true;
                perm.push(cand);
                if backtrack(canon, c, perm, used) {
                    return true;
                }
                perm.pop();
                used[cand] = false;
            }
        }
        false
    }
    if backtrack(canon, c, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}
