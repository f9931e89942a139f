//! Finite-order automorphisms of the root lattice factored as a Weyl part
//! composed with a diagram part, commuting pairs and their joint vanishing
//! sets, the reflective property, orbit/reflection orders, rank bounds, and
//! the reflection-lift sign calculus.

use std::collections::BTreeMap;

use crate::cascade::{omega_from_subspace, parity, OrthoSet, RationalSubspace};
use crate::diagram::{induced_lattice_map, DiagramAut};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsys::{Family, Root, RootSystem};
use crate::scalar::{rat, Rat, Scalar};
use crate::weyl::{
    is_weyl_element, reflection_matrix, LatticeMap, WeylWord, MAX_ENUM_RANK,
};
use num_traits::Zero;

/// A finite-order automorphism of the root lattice, stored as a Weyl part
/// composed with a diagram part. The diagram part being trivial is the
/// torus-level shadow of the automorphism being inner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusAut<I: Scalar> {
    weyl_part: LatticeMap<I>,
    diag_part: DiagramAut,
    compiled: LatticeMap<I>,
    order: usize,
}

impl<I: Scalar> TorusAut<I> {
    fn finish(rs: &RootSystem<I>, weyl_part: LatticeMap<I>, diag_part: DiagramAut) -> Result<Self> {
        let compiled = weyl_part.compose(&induced_lattice_map(rs, &diag_part));
        if !compiled.permutes_roots(rs) {
            return Err(Error::NotWeyl(
                "compiled map does not permute the root set".into(),
            ));
        }
        let order = compiled.order()?;
        Ok(TorusAut {
            weyl_part,
            diag_part,
            compiled,
            order,
        })
    }

    pub fn identity(rs: &RootSystem<I>) -> Self {
        TorusAut {
            weyl_part: LatticeMap::identity(rs.rank()),
            diag_part: DiagramAut::identity(rs.rank()),
            compiled: LatticeMap::identity(rs.rank()),
            order: 1,
        }
    }

    /// Weyl part given as a word in simple reflections.
    pub fn from_word(rs: &RootSystem<I>, word: &WeylWord, diag_part: DiagramAut) -> Result<Self> {
        TorusAut::finish(rs, word.to_matrix(rs), diag_part)
    }

    /// Weyl part given as a product of root reflections.
    pub fn from_reflections(
        rs: &RootSystem<I>,
        roots: &[Root<I>],
        diag_part: DiagramAut,
    ) -> Result<Self> {
        let mut m = LatticeMap::identity(rs.rank());
        for r in roots {
            m = reflection_matrix(rs, r)?.compose(&m);
        }
        TorusAut::finish(rs, m, diag_part)
    }

    /// Weyl part given as a word composed with a product of root
    /// reflections (both are Weyl elements by construction).
    pub fn from_word_and_reflections(
        rs: &RootSystem<I>,
        word: &WeylWord,
        roots: &[Root<I>],
        diag_part: DiagramAut,
    ) -> Result<Self> {
        let mut m = word.to_matrix(rs);
        for r in roots {
            m = reflection_matrix(rs, r)?.compose(&m);
        }
        TorusAut::finish(rs, m, diag_part)
    }

    /// Weyl part already known to be a Weyl group element, e.g. taken from
    /// an exhaustive enumeration; skips the membership search.
    pub(crate) fn from_enumerated(
        rs: &RootSystem<I>,
        weyl_part: LatticeMap<I>,
        diag_part: DiagramAut,
    ) -> Result<Self> {
        TorusAut::finish(rs, weyl_part, diag_part)
    }

    /// Weyl part given as a raw matrix. At rank <= 6 membership in the Weyl
    /// group is verified exhaustively; larger systems only accept maps built
    /// from words or reflections.
    pub fn from_matrix(
        rs: &RootSystem<I>,
        weyl_part: LatticeMap<I>,
        diag_part: DiagramAut,
    ) -> Result<Self> {
        if rs.rank() > MAX_ENUM_RANK {
            return Err(Error::NotWeyl(format!(
                "raw matrices accepted only up to rank {MAX_ENUM_RANK}; use words"
            )));
        }
        if !is_weyl_element(rs, &weyl_part)? {
            return Err(Error::NotWeyl("matrix is not a Weyl group element".into()));
        }
        TorusAut::finish(rs, weyl_part, diag_part)
    }

    pub fn weyl_part(&self) -> &LatticeMap<I> {
        &self.weyl_part
    }

    pub fn diag_part(&self) -> &DiagramAut {
        &self.diag_part
    }

    pub fn compiled(&self) -> &LatticeMap<I> {
        &self.compiled
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Torus-level inner-class flag: trivial diagram part.
    pub fn is_inner_class(&self) -> bool {
        self.diag_part.is_identity()
    }

    pub fn is_involution(&self) -> bool {
        self.order <= 2
    }

    pub fn apply(&self, r: &Root<I>) -> Root<I> {
        self.compiled.apply_root(r)
    }
}

/// Rational fixed subspace of a lattice map (kernel of m - id).
pub fn matrix_fixed_subspace<I: Scalar>(m: &LatticeMap<I>) -> RationalSubspace<I> {
    let n = m.dim();
    let mut rows: Vec<Vec<Rat<I>>> = Vec::with_capacity(n);
    for i in 0..n {
        rows.push(
            (0..n)
                .map(|j| {
                    let mut x = rat(m.rows()[i][j].clone());
                    if i == j {
                        x = x - rat(I::one());
                    }
                    x
                })
                .collect(),
        );
    }
    let basis = linalg::kernel_basis(&rows, n);
    RationalSubspace::new(basis, n).expect("kernel basis is independent")
}

/// Fixed subspace of a torus automorphism on the coordinate space.
pub fn fixed_subspace<I: Scalar>(a: &TorusAut<I>) -> RationalSubspace<I> {
    matrix_fixed_subspace(a.compiled())
}

/// A commuting pair (involution, finite-order automorphism) with its joint
/// fixed subspace and vanishing set.
#[derive(Debug, Clone)]
pub struct PairSetup<I: Scalar> {
    pub sigma1: TorusAut<I>,
    pub sigma2: TorusAut<I>,
    pub s: RationalSubspace<I>,
    omega_pos: Vec<Root<I>>,
}

impl<I: Scalar> PairSetup<I> {
    /// Positive part of the vanishing set; the full set is its union with
    /// the negatives.
    pub fn omega_pos(&self) -> &[Root<I>] {
        &self.omega_pos
    }
}

/// Assemble a pair: checks commutation and that sigma1 is an involution,
/// then computes the joint fixed space and its vanishing set.
pub fn make_pair<I: Scalar>(
    rs: &RootSystem<I>,
    sigma1: TorusAut<I>,
    sigma2: TorusAut<I>,
) -> Result<PairSetup<I>> {
    let a = sigma1.compiled().compose(sigma2.compiled());
    let b = sigma2.compiled().compose(sigma1.compiled());
    if a != b {
        return Err(Error::NotCommuting);
    }
    if sigma1.order() > 2 {
        return Err(Error::NotInvolution(sigma1.order()));
    }
    let n = rs.rank();
    let mut rows: Vec<Vec<Rat<I>>> = Vec::new();
    for m in [sigma1.compiled(), sigma2.compiled()] {
        for i in 0..n {
            rows.push(
                (0..n)
                    .map(|j| {
                        let mut x = rat(m.rows()[i][j].clone());
                        if i == j {
                            x = x - rat(I::one());
                        }
                        x
                    })
                    .collect(),
            );
        }
    }
    let basis = linalg::kernel_basis(&rows, n);
    let s = RationalSubspace::new(basis, n)?;
    let omega_pos = omega_from_subspace(rs, &s)?;
    Ok(PairSetup {
        sigma1,
        sigma2,
        s,
        omega_pos,
    })
}

/// Does sigma2 send every root of the vanishing set to its negative?
pub fn check_property_star<I: Scalar>(p: &PairSetup<I>) -> bool {
    p.omega_pos
        .iter()
        .all(|r| p.sigma2.apply(r) == r.neg())
}

/// Does sigma1 fix every root of the vanishing set?
pub fn sigma1_fixes_omega<I: Scalar>(p: &PairSetup<I>) -> bool {
    p.omega_pos.iter().all(|r| p.sigma1.apply(r) == *r)
}

/// Is the vanishing set pairwise strongly orthogonal?
pub fn omega_strongly_orthogonal<I: Scalar>(rs: &RootSystem<I>, p: &PairSetup<I>) -> Result<bool> {
    for (i, a) in p.omega_pos.iter().enumerate() {
        for b in p.omega_pos.iter().skip(i + 1) {
            if !rs.is_strongly_orthogonal(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Result of [`reflection_order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReflectionOrder {
    /// Maximal number of linearly independent consecutive images.
    pub ell: usize,
    /// Whether the ell-th power sends the root to its negative.
    pub verified: bool,
}

/// The largest `ell` such that `alpha, a(alpha), ..., a^(ell-1)(alpha)` are
/// linearly independent, and whether `a^ell(alpha) = -alpha`. When verified,
/// the period of `alpha` under `a` is checked to equal `2 ell`.
pub fn reflection_order<I: Scalar>(
    rs: &RootSystem<I>,
    a: &TorusAut<I>,
    alpha: &Root<I>,
) -> Result<ReflectionOrder> {
    rs.check_member(alpha)?;
    let mut span: Vec<Vec<Rat<I>>> = vec![linalg::to_rat_vec(&alpha.0)];
    let mut cur = alpha.clone();
    loop {
        cur = a.apply(&cur);
        let v = linalg::to_rat_vec(&cur.0);
        if linalg::in_span(&span, &v) {
            break;
        }
        span.push(v);
    }
    let ell = span.len();
    // cur is now a^ell(alpha)
    let verified = cur == alpha.neg();
    if verified {
        let mut period = 1usize;
        let mut img = a.apply(alpha);
        while img != *alpha {
            img = a.apply(&img);
            period += 1;
            if period > 4096 {
                return Err(Error::InternalInvariantViolation(
                    "root period did not close".into(),
                ));
            }
        }
        if period != 2 * ell {
            return Err(Error::InternalInvariantViolation(format!(
                "verified root has period {period} but independence length {ell}"
            )));
        }
    }
    Ok(ReflectionOrder { ell, verified })
}

/// Result of [`rank_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankBound {
    pub lhs: usize,
    pub rhs: i64,
    pub equality: bool,
}

/// Dimension bound: dim(joint fixed space) <= dim(fixed space of sigma1)
/// minus the size of the positive vanishing set. The inequality is asserted
/// when the structural preconditions hold (reflective pair, sigma1 fixing
/// the vanishing set, strong orthogonality); it is reported either way.
pub fn rank_bound<I: Scalar>(rs: &RootSystem<I>, p: &PairSetup<I>) -> Result<RankBound> {
    let lhs = p.s.dim();
    let fix1 = matrix_fixed_subspace(p.sigma1.compiled()).dim();
    let rhs = fix1 as i64 - p.omega_pos.len() as i64;
    let structural =
        check_property_star(p) && sigma1_fixes_omega(p) && omega_strongly_orthogonal(rs, p)?;
    if structural && (lhs as i64) > rhs {
        return Err(Error::InternalInvariantViolation(format!(
            "rank bound violated: {lhs} > {rhs}"
        )));
    }
    Ok(RankBound {
        lhs,
        rhs,
        equality: lhs as i64 == rhs,
    })
}

/// Sign of the squared reflection lift on the root space of `beta`:
/// `(-1)^(2<a,b>/<a,a>)`. Excluded for G2.
pub fn lift_sign<I: Scalar>(rs: &RootSystem<I>, alpha: &Root<I>, beta: &Root<I>) -> Result<i8> {
    if rs.stype().family() == Family::G {
        return Err(Error::UnsupportedType("G2".into()));
    }
    let c = rs.cartan_int(alpha, beta)?;
    Ok(if c.is_even() { 1 } else { -1 })
}

/// Sufficient parity criterion for the reflection product of the set to lift
/// to an involution: the parity function is even at every positive root.
pub fn lifts_to_involution<I: Scalar>(rs: &RootSystem<I>, omega: &OrthoSet<I>) -> Result<bool> {
    if rs.stype().family() == Family::G {
        return Err(Error::UnsupportedType("G2".into()));
    }
    for beta in rs.positives() {
        if parity(rs, omega, beta)?.is_odd() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Symbolic sign class of a torus element acting on a root space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignDescriptor<I: Scalar> {
    /// The action is the identity on the root space.
    Even,
    /// The action is nontrivial (sign -1, or an obstructed non-real phase).
    Odd,
    /// The sign depends on the free parameter; carries the value of the
    /// linear functional.
    XDependent(Rat<I>),
}

/// Parity class of the exponent sum(m_a * 2<a,b>/<a,a>) plus the linear term
/// b(x). Coefficients must be odd and cover the whole set; `x` must pair to
/// zero with every set member.
pub fn torus_sign_action<I: Scalar>(
    rs: &RootSystem<I>,
    omega: &OrthoSet<I>,
    m_coeffs: &BTreeMap<Root<I>, I>,
    x: &[Rat<I>],
    beta: &Root<I>,
) -> Result<SignDescriptor<I>> {
    rs.check_member(beta)?;
    if x.len() != rs.rank() {
        return Err(Error::ShapeError {
            expected: rs.rank(),
            got: x.len(),
        });
    }
    for a in omega.roots() {
        let m = m_coeffs
            .get(a)
            .ok_or_else(|| Error::IncompleteCoefficients(a.to_string()))?;
        if m.is_even() {
            return Err(Error::PreconditionViolated(format!(
                "coefficient at {a} must be odd"
            )));
        }
        let av = linalg::to_rat_vec(&a.0);
        if !rs.form_value_rat(&av, x)?.is_zero() {
            return Err(Error::PreconditionViolated(format!(
                "x does not annihilate {a}"
            )));
        }
    }
    let bv = linalg::to_rat_vec(&beta.0);
    let bx = rs.form_value_rat(&bv, x)?;
    if !bx.is_zero() {
        return Ok(SignDescriptor::XDependent(bx));
    }
    let mut d = I::zero();
    for a in omega.roots() {
        d = d + m_coeffs[a].clone() * rs.cartan_int(a, beta)?;
    }
    let four = crate::scalar::from_i64::<I>(4);
    if d.mod_floor(&four).is_zero() {
        Ok(SignDescriptor::Even)
    } else {
        Ok(SignDescriptor::Odd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cascade::d_series_chain;
    use crate::rootsys::SystemType;

    type Rs = RootSystem<i64>;

    fn rs(name: &str) -> Rs {
        Rs::build(SystemType::parse(name).unwrap()).unwrap()
    }

    fn root(v: &[i64]) -> Root<i64> {
        Root::from_i64s(v)
    }

    fn refl_aut(rs_: &Rs, roots: &[Root<i64>]) -> TorusAut<i64> {
        TorusAut::from_reflections(rs_, roots, DiagramAut::identity(rs_.rank())).unwrap()
    }

    #[test]
    fn fixed_subspaces() {
        let d4 = rs("D4");
        assert_eq!(fixed_subspace(&TorusAut::identity(&d4)).dim(), 4);

        let s_delta = refl_aut(&d4, &[root(&[1, 2, 1, 1])]);
        assert_eq!(fixed_subspace(&s_delta).dim(), 3);

        let prod = refl_aut(&d4, &[root(&[1, 2, 1, 1]), d4.simple(0)]);
        assert_eq!(fixed_subspace(&prod).dim(), 2);
        assert_eq!(prod.order(), 2);
    }

    #[test]
    fn pairs_and_omega() {
        let d4 = rs("D4");
        let id = TorusAut::identity(&d4);
        let p = make_pair(&d4, id.clone(), id.clone()).unwrap();
        assert_eq!(p.s.dim(), 4);
        assert!(p.omega_pos().is_empty());

        let sigma = refl_aut(&d4, &[root(&[1, 2, 1, 1]), d4.simple(0)]);
        let p = make_pair(&d4, sigma.clone(), sigma).unwrap();
        assert_eq!(
            p.omega_pos().to_vec(),
            vec![d4.simple(0), root(&[1, 2, 1, 1])]
        );
        assert!(check_property_star(&p));

        // A3: sigma1 = s_delta s_a2, sigma2 = the flip
        let a3 = rs("A3");
        let sigma1 = refl_aut(&a3, &[root(&[1, 1, 1]), a3.simple(1)]);
        let flip = DiagramAut::new(&a3, vec![2, 1, 0]).unwrap();
        let sigma2 = TorusAut::from_word(&a3, &WeylWord::empty(), flip).unwrap();
        let p = make_pair(&a3, sigma1, sigma2).unwrap();
        assert!(p.omega_pos().contains(&root(&[1, 1, 1])));
        assert!(p.omega_pos().contains(&a3.simple(1)));
    }

    #[test]
    fn pair_error_paths() {
        let a2 = rs("A2");
        let s1 = refl_aut(&a2, &[a2.simple(0)]);
        let s2 = refl_aut(&a2, &[a2.simple(1)]);
        assert!(matches!(make_pair(&a2, s1, s2), Err(Error::NotCommuting)));

        let rot = TorusAut::from_word(
            &a2,
            &WeylWord::new(vec![1, 2], 2).unwrap(),
            DiagramAut::identity(2),
        )
        .unwrap();
        assert_eq!(rot.order(), 3);
        let id = TorusAut::identity(&a2);
        assert!(matches!(
            make_pair(&a2, rot, id),
            Err(Error::NotInvolution(3))
        ));
    }

    #[test]
    fn star_fails_when_omega_is_rotated() {
        // signed rotation on the first two coordinates of D4, order 4
        let d4 = rs("D4");
        let m = LatticeMap::from_rows(vec![
            vec![1, -1, 0, 0],
            vec![2, -1, 0, 0],
            vec![1, 0, 0, -1],
            vec![1, 0, -1, 0],
        ])
        .unwrap();
        let sigma2 = TorusAut::from_matrix(&d4, m, DiagramAut::identity(4)).unwrap();
        assert_eq!(sigma2.order(), 4);
        let sigma1 = refl_aut(&d4, &[root(&[1, 2, 1, 1]), d4.simple(0)]);
        let p = make_pair(&d4, sigma1, sigma2).unwrap();
        assert_eq!(p.omega_pos().len(), 6);
        assert!(!check_property_star(&p));
    }

    #[test]
    fn reflection_orders() {
        let d4 = rs("D4");
        let delta = root(&[1, 2, 1, 1]);
        let s_delta = refl_aut(&d4, std::slice::from_ref(&delta));
        assert_eq!(
            reflection_order(&d4, &s_delta, &delta).unwrap(),
            ReflectionOrder {
                ell: 1,
                verified: true
            }
        );
        let id = TorusAut::identity(&d4);
        assert_eq!(
            reflection_order(&d4, &id, &delta).unwrap(),
            ReflectionOrder {
                ell: 1,
                verified: false
            }
        );

        // order-4 signed rotation in B2: e1 -> e2 -> -e1
        let b2 = rs("B2");
        let rot = TorusAut::from_word(
            &b2,
            &WeylWord::new(vec![1, 2], 2).unwrap(),
            DiagramAut::identity(2),
        )
        .unwrap();
        let e1 = root(&[1, 1]);
        assert_eq!(
            reflection_order(&b2, &rot, &e1).unwrap(),
            ReflectionOrder {
                ell: 2,
                verified: true
            }
        );
    }

    #[test]
    fn rank_bounds() {
        let a3 = rs("A3");
        let id = TorusAut::identity(&a3);
        let p = make_pair(&a3, id.clone(), id.clone()).unwrap();
        let b = rank_bound(&a3, &p).unwrap();
        assert_eq!((b.lhs, b.rhs, b.equality), (3, 3, true));

        let s_delta = refl_aut(&a3, &[root(&[1, 1, 1])]);
        let p = make_pair(&a3, id, s_delta).unwrap();
        let b = rank_bound(&a3, &p).unwrap();
        assert_eq!((b.lhs, b.rhs, b.equality), (2, 2, true));
    }

    #[test]
    fn lift_signs() {
        let d4 = rs("D4");
        let delta = root(&[1, 2, 1, 1]);
        assert_eq!(lift_sign(&d4, &delta, &delta).unwrap(), 1);
        assert_eq!(lift_sign(&d4, &delta, &d4.simple(1)).unwrap(), -1);
        assert_eq!(lift_sign(&d4, &delta, &d4.simple(0)).unwrap(), 1);

        let g2 = rs("G2");
        assert!(matches!(
            lift_sign(&g2, &g2.simple(0), &g2.simple(1)),
            Err(Error::UnsupportedType(_))
        ));
    }

    #[test]
    fn involution_lifts() {
        let d4 = rs("D4");
        assert!(lifts_to_involution(&d4, &OrthoSet::empty()).unwrap());
        let form1 = OrthoSet::new(&d4, vec![root(&[1, 2, 1, 1]), d4.simple(0)]).unwrap();
        assert!(lifts_to_involution(&d4, &form1).unwrap());

        let d6 = rs("D6");
        let form2 = d_series_chain(&d6, &[1, 3]).unwrap();
        assert!(!lifts_to_involution(&d6, &form2).unwrap());
    }

    #[test]
    fn lift_consistency_for_even_sets() {
        // an all-even set's reflection product factors back into the set
        let d6 = rs("D6");
        let form1 = OrthoSet::new(
            &d6,
            vec![
                root(&[1, 2, 2, 2, 1, 1]),
                d6.simple(0),
                root(&[0, 0, 1, 2, 1, 1]),
                d6.simple(2),
            ],
        )
        .unwrap();
        assert!(lifts_to_involution(&d6, &form1).unwrap());
        let m = form1.reflection_product(&d6).unwrap();
        let roots = crate::weyl::involution_factorization(&d6, &m)
            .unwrap()
            .unwrap();
        let set: std::collections::BTreeSet<_> = roots.into_iter().collect();
        assert_eq!(
            set,
            form1.roots().iter().cloned().collect::<std::collections::BTreeSet<_>>()
        );
        // and all lift signs against any positive root multiply to +1
        for beta in d6.positives() {
            let prod: i32 = form1
                .roots()
                .iter()
                .map(|a| lift_sign(&d6, a, beta).unwrap() as i32)
                .product();
            assert_eq!(prod, 1);
        }
    }

    #[test]
    fn sign_action_cases() {
        let d6 = rs("D6");
        let form2 = d_series_chain(&d6, &[1, 3]).unwrap();
        let mut coeffs = BTreeMap::new();
        for r in form2.roots() {
            coeffs.insert(r.clone(), 1i64);
        }
        let zero = vec![Rat::<i64>::zero(); 6];

        // member roots act by -1
        for r in form2.roots() {
            assert_eq!(
                torus_sign_action(&d6, &form2, &coeffs, &zero, r).unwrap(),
                SignDescriptor::Odd
            );
        }
        // the boundary simple root of an even-rank form-2 set is obstructed
        assert_eq!(
            torus_sign_action(&d6, &form2, &coeffs, &zero, &d6.simple(3)).unwrap(),
            SignDescriptor::Odd
        );
        // empty set: everything is even
        let empty = OrthoSet::empty();
        for b in d6.positives().iter().take(5) {
            assert_eq!(
                torus_sign_action(&d6, &empty, &BTreeMap::new(), &zero, b).unwrap(),
                SignDescriptor::Even
            );
        }
        // a vector not annihilating beta reports the functional
        let mut x = vec![Rat::<i64>::zero(); 6];
        x[4] = Rat::from_integer(1);
        x[5] = Rat::from_integer(-1);
        // x = e5 direction lies in the kernel of both chain roots
        let beta = d6.simple(4);
        match torus_sign_action(&d6, &form2, &coeffs, &x, &beta).unwrap() {
            SignDescriptor::XDependent(v) => assert!(!v.is_zero()),
            other => panic!("expected x-dependent sign, got {other:?}"),
        }
        // missing coefficient is rejected
        let mut partial = coeffs.clone();
        partial.remove(&form2.roots()[0]);
        assert!(matches!(
            torus_sign_action(&d6, &form2, &partial, &zero, &beta),
            Err(Error::IncompleteCoefficients(_))
        ));
        // even coefficient is rejected
        let mut even = coeffs;
        even.insert(form2.roots()[0].clone(), 2);
        assert!(matches!(
            torus_sign_action(&d6, &form2, &even, &zero, &beta),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn finite_order_invariant() {
        // the compiled order equals the least common multiple of the root
        // orbit periods, hence divides 2 * ord(nu) * lcm trivially
        let d4 = rs("D4");
        let flips = crate::diagram::diagram_automorphisms(&d4);
        for nu in flips {
            for word in [vec![], vec![1], vec![1, 2], vec![2, 3, 2, 1], vec![1, 2, 3, 4]] {
                let w = WeylWord::new(word, 4).unwrap();
                let a = TorusAut::from_word(&d4, &w, nu.clone()).unwrap();
                assert!(a.compiled().pow(a.order()).is_identity());
                let mut lcm = 1usize;
                for r in d4.positives() {
                    let mut period = 1usize;
                    let mut img = a.apply(r);
                    while img != *r {
                        img = a.apply(&img);
                        period += 1;
                    }
                    lcm = num_integer::lcm(lcm, period);
                }
                assert_eq!(a.order(), lcm);
                assert_eq!((2 * nu.order() * lcm) % a.order(), 0);
            }
        }
    }

    #[test]
    fn rank_bound_strict_for_outer_second_factor() {
        // A-series: an outer-class second factor built from one chain root
        // leaves slack in the dimension bound
        let a5 = rs("A5");
        let flip = DiagramAut::new(&a5, vec![4, 3, 2, 1, 0]).unwrap();
        let sigma2 = TorusAut::from_reflections(&a5, &[root(&[1, 1, 1, 1, 1])], flip).unwrap();
        let p = make_pair(&a5, TorusAut::identity(&a5), sigma2).unwrap();
        assert_eq!(p.omega_pos().to_vec(), vec![root(&[1, 1, 1, 1, 1])]);
        let b = rank_bound(&a5, &p).unwrap();
        assert_eq!((b.lhs, b.rhs, b.equality), (2, 4, false));
    }
}
