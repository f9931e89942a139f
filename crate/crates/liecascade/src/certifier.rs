//! Classification tables as data, the subgroup classification of Z2 x Zk,
//! and the certificate engine: given a commuting pair of torus
//! automorphisms on a simple system, select the applicable case path and
//! attach machine-checked combinatorial witnesses for isotropy formality.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cascade::{
    a_series_chain, classify_d_normal_form, normal_form, parity, DNormalForm, OrthoSet,
};
use crate::diagram::{diagram_automorphisms, min_outer_fixed_rank, DiagramAut};
use crate::error::{Error, Result};
use crate::linalg;
use crate::oracle::AbelianTag;
use crate::rootsys::{Family, Root, RootSystem, SystemType, TypeSymbol};
use crate::scalar::Scalar;
use crate::torusauto::{
    check_property_star, fixed_subspace, lifts_to_involution, make_pair, matrix_fixed_subspace,
    PairSetup, TorusAut,
};
use crate::weyl::WeylWord;
use num_integer::Integer as _;

// ---------------------------------------------------------------------------
// involution classification tables
// ---------------------------------------------------------------------------

/// One expanded row of the involution classification: an ambient type, the
/// inner/outer flag, the fixed-point summands (degenerate symbols resolved
/// to their canonical semisimple decompositions), the center dimension, and
/// the parameter constraint the row was expanded from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionClassRow {
    pub ambient: SystemType,
    pub inner: bool,
    pub fixed_summands: Vec<TypeSymbol>,
    pub center_dim: u8,
    pub param_constraints: String,
}

impl InvolutionClassRow {
    pub fn summand_rank(&self) -> usize {
        self.fixed_summands.iter().map(|s| s.rank).sum()
    }
}

impl fmt::Display for InvolutionClassRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.inner { "inner" } else { "outer" };
        write!(f, "{} {kind} -> ", self.ambient)?;
        if self.fixed_summands.is_empty() {
            write!(f, "0")?;
        }
        for (i, s) in self.fixed_summands.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{s}")?;
        }
        if self.center_dim > 0 {
            write!(f, "+R")?;
        }
        if !self.param_constraints.is_empty() {
            write!(f, "  ({})", self.param_constraints)?;
        }
        Ok(())
    }
}

/// Resolve degenerate low-rank symbols into canonical semisimple summands.
fn expand_symbol(s: TypeSymbol) -> Vec<TypeSymbol> {
    use Family::*;
    match (s.family, s.rank) {
        (_, 0) => vec![],
        (B, 1) | (C, 1) => vec![TypeSymbol::new(A, 1)],
        (C, 2) => vec![TypeSymbol::new(B, 2)],
        (D, 2) => vec![TypeSymbol::new(A, 1), TypeSymbol::new(A, 1)],
        (D, 3) => vec![TypeSymbol::new(A, 3)],
        _ => vec![s],
    }
}

fn row(
    ambient: SystemType,
    inner: bool,
    raw: &[TypeSymbol],
    center_dim: u8,
    param: String,
) -> InvolutionClassRow {
    let fixed_summands = raw.iter().flat_map(|&s| expand_symbol(s)).collect();
    InvolutionClassRow {
        ambient,
        inner,
        fixed_summands,
        center_dim,
        param_constraints: param,
    }
}

/// All involution classification rows for the ambient type, with parameter
/// ranges expanded at the concrete rank. The rows transcribe the classical
/// tables; degenerate symbols are normalized but the stated parameter ranges
/// are kept verbatim (in particular p = 0 is allowed where the source allows
/// it, and the outer rows for a_{2n-1} require n > 2 as printed, so A3 gets
/// no outer row even though A3 admits outer involutions via its D3 guise).
pub fn involution_table(stype: SystemType) -> Vec<InvolutionClassRow> {
    use Family::*;
    let n = stype.rank();
    let t = TypeSymbol::new;
    let mut rows: Vec<InvolutionClassRow> = Vec::new();

    match stype.family() {
        B => {
            for p in 2..=n {
                rows.push(row(
                    stype,
                    true,
                    &[t(D, p), t(B, n - p)],
                    0,
                    format!("p={p} (2 <= p <= n)"),
                ));
            }
            if n > 2 {
                rows.push(row(stype, true, &[t(B, n - 1)], 1, String::new()));
            }
        }
        C => {
            for p in 1..=n / 2 {
                rows.push(row(
                    stype,
                    true,
                    &[t(C, p), t(C, n - p)],
                    0,
                    format!("p={p} (1 <= p <= floor(n/2))"),
                ));
            }
            if n > 1 {
                rows.push(row(stype, true, &[t(A, n - 1)], 1, String::new()));
            }
        }
        D => {
            for p in 2..=n / 2 {
                rows.push(row(
                    stype,
                    true,
                    &[t(D, p), t(D, n - p)],
                    0,
                    format!("p={p} (2 <= p <= floor(n/2))"),
                ));
            }
            if n == 4 {
                rows.push(row(stype, true, &[t(A, 3)], 1, String::new()));
            } else {
                rows.push(row(stype, true, &[t(D, n - 1)], 1, String::new()));
                rows.push(row(stype, true, &[t(A, n - 1)], 1, String::new()));
            }
            // outer: ambient d_{m+1} splits as b_p + b_{m-p}
            let m = n - 1;
            if m > 1 {
                for p in 0..=m / 2 {
                    rows.push(row(
                        stype,
                        false,
                        &[t(B, p), t(B, m - p)],
                        0,
                        format!("p={p} (0 <= p <= floor(n/2))"),
                    ));
                }
            }
        }
        A => {
            for p in 0..=(n.saturating_sub(1)) / 2 {
                rows.push(row(
                    stype,
                    true,
                    &[t(A, p), t(A, n - p - 1)],
                    1,
                    format!("p={p} (0 <= p <= floor((n-1)/2))"),
                ));
            }
            if n.is_multiple_of(2) && n >= 4 {
                rows.push(row(stype, false, &[t(B, n / 2)], 0, String::new()));
            }
            if n % 2 == 1 && n.div_ceil(2) > 2 {
                rows.push(row(stype, false, &[t(D, n.div_ceil(2))], 0, String::new()));
                rows.push(row(stype, false, &[t(C, n.div_ceil(2))], 0, String::new()));
            }
        }
        G => {
            rows.push(row(stype, true, &[t(A, 1), t(A, 1)], 0, String::new()));
        }
        F => {
            rows.push(row(stype, true, &[t(B, 4)], 0, String::new()));
            rows.push(row(stype, true, &[t(A, 1), t(C, 3)], 0, String::new()));
        }
        E => match n {
            6 => {
                rows.push(row(stype, true, &[t(A, 1), t(A, 5)], 0, String::new()));
                rows.push(row(stype, true, &[t(D, 5)], 1, String::new()));
                rows.push(row(stype, false, &[t(C, 4)], 0, String::new()));
                rows.push(row(stype, false, &[t(F, 4)], 0, String::new()));
            }
            7 => {
                rows.push(row(stype, true, &[t(A, 7)], 0, String::new()));
                rows.push(row(stype, true, &[t(A, 1), t(D, 6)], 0, String::new()));
                rows.push(row(stype, true, &[t(E, 6)], 1, String::new()));
            }
            _ => {
                rows.push(row(stype, true, &[t(A, 1), t(E, 7)], 0, String::new()));
                rows.push(row(stype, true, &[t(D, 8)], 0, String::new()));
            }
        },
    }
    rows
}

// ---------------------------------------------------------------------------
// subgroups of Z2 x Zk
// ---------------------------------------------------------------------------

/// A subgroup of Z2 x Zk with its canonical isomorphism tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianSubgroup {
    pub k: u64,
    pub elements: Vec<(u64, u64)>,
    pub generators: Vec<(u64, u64)>,
    pub classification: AbelianTag,
}

fn close_subgroup(k: u64, gens: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut set: BTreeSet<(u64, u64)> = BTreeSet::new();
    set.insert((0, 0));
    let mut frontier: Vec<(u64, u64)> = vec![(0, 0)];
    while let Some((a, b)) = frontier.pop() {
        for &(ga, gb) in gens {
            let next = ((a + ga) % 2, (b + gb) % k);
            if set.insert(next) {
                frontier.push(next);
            }
        }
    }
    set.into_iter().collect()
}

/// Constructive classification by the greatest-common-divisor split: reduce
/// to generators x = (1,a), y = (0,b), write g = m a + n b, and branch on
/// the parities of m, a/g and b/g to decide whether (1,0) lies in the group.
fn classify_constructive(k: u64, elements: &[(u64, u64)]) -> (AbelianTag, Vec<(u64, u64)>) {
    let gamma2: Vec<u64> = elements
        .iter()
        .filter(|&&(a, _)| a == 0)
        .map(|&(_, b)| b)
        .collect();
    let r = gamma2.len();
    let b = gamma2.iter().copied().filter(|&x| x != 0).min().unwrap_or(0);
    let has_one = elements.iter().any(|&(a, _)| a == 1);
    if !has_one {
        let gens = if b == 0 { vec![] } else { vec![(0, b)] };
        return (AbelianTag::Cyclic(r), gens);
    }
    let a = elements
        .iter()
        .filter(|&&(x, _)| x == 1)
        .map(|&(_, y)| y)
        .min()
        .unwrap();
    let size = elements.len();

    // Bezout split over the integers
    let ai = a as i64;
    let bi = b as i64;
    let contains_one_zero;
    if ai == 0 {
        contains_one_zero = true;
    } else {
        let eg = ai.extended_gcd(&bi);
        let (g, m) = (eg.gcd, eg.x);
        if m.is_even() {
            contains_one_zero = true;
        } else {
            let a_over_g = ai / g;
            let b_over_g = if g == 0 { 0 } else { bi / g };
            contains_one_zero = a_over_g.is_even() || b_over_g.is_odd();
        }
    }
    debug_assert_eq!(contains_one_zero, elements.contains(&(1, 0)));

    if contains_one_zero {
        let mut gens = vec![(1u64, 0u64)];
        if b != 0 {
            gens.push((0, b));
        }
        let tag = if r % 2 == 1 {
            AbelianTag::Cyclic(2 * r)
        } else {
            AbelianTag::TwoByR(r)
        };
        (tag, gens)
    } else {
        // cyclic with generator (1, g) for the Bezout gcd g
        let g = if bi == 0 {
            a
        } else {
            num_integer::gcd(a, b)
        };
        debug_assert_eq!(close_subgroup(k, &[(1, g % k)]).len(), size);
        (AbelianTag::Cyclic(size), vec![(1, g % k)])
    }
}

/// Enumerate all subgroups of Z2 x Zk, each with its classification.
/// Every subgroup is generated by at most two elements and can be brought
/// to the generator normal form y = (0, d) with d | k and, optionally,
/// x = (1, c) with 2c = 0 mod d; enumerating those forms is exhaustive.
/// (`all_subgroups_by_closure` regenerates the same list by brute force and
/// is used as a cross-check in tests.)
pub fn subgroups_of_z2xzk(k: u64) -> Result<Vec<AbelianSubgroup>> {
    if k < 1 {
        return Err(Error::PreconditionViolated("k must be >= 1".into()));
    }
    let mut seen: BTreeSet<Vec<(u64, u64)>> = BTreeSet::new();
    for d in (1..=k).filter(|d| k.is_multiple_of(*d)) {
        seen.insert(close_subgroup(k, &[(0, d % k)]));
        seen.insert(close_subgroup(k, &[(1, 0), (0, d % k)]));
        if d % 2 == 0 {
            seen.insert(close_subgroup(k, &[(1, d / 2), (0, d % k)]));
        }
    }
    let mut out = Vec::new();
    for elements in seen {
        let (classification, generators) = classify_constructive(k, &elements);
        out.push(AbelianSubgroup {
            k,
            elements,
            generators,
            classification,
        });
    }
    out.sort_by(|a, b| {
        a.elements
            .len()
            .cmp(&b.elements.len())
            .then(a.elements.cmp(&b.elements))
    });
    Ok(out)
}

/// Brute-force regeneration: close every pair of elements. Exhaustive since
/// every subgroup is generated by at most two elements.
pub fn all_subgroups_by_closure(k: u64) -> BTreeSet<Vec<(u64, u64)>> {
    let all: Vec<(u64, u64)> = (0..2u64)
        .flat_map(|a| (0..k).map(move |b| (a, b)))
        .collect();
    let mut seen: BTreeSet<Vec<(u64, u64)>> = BTreeSet::new();
    for &x in &all {
        for &y in &all {
            seen.insert(close_subgroup(k, &[x, y]));
        }
    }
    seen
}

/// Is Z_p x Z_q cyclic, i.e. are p and q coprime?
pub fn crt_cyclic(p: u64, q: u64) -> Result<bool> {
    if p < 1 || q < 1 {
        return Err(Error::PreconditionViolated("p, q must be >= 1".into()));
    }
    Ok(num_integer::gcd(p, q) == 1)
}

// ---------------------------------------------------------------------------
// the certificate engine
// ---------------------------------------------------------------------------

/// The case paths of the formality analysis for a simple system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CasePath {
    BothInnerOrBothOuter,
    OuterInner,
    InnerOuterE6,
    InnerOuterA,
    InnerOuterDOrder3,
    InnerOuterDForm1,
    InnerOuterDForm2,
}

impl CasePath {
    pub fn as_str(&self) -> &'static str {
        match self {
            CasePath::BothInnerOrBothOuter => "both-inner-or-both-outer",
            CasePath::OuterInner => "outer-inner",
            CasePath::InnerOuterE6 => "inner-outer-e6",
            CasePath::InnerOuterA => "inner-outer-a",
            CasePath::InnerOuterDOrder3 => "inner-outer-d-order3",
            CasePath::InnerOuterDForm1 => "inner-outer-d-form1",
            CasePath::InnerOuterDForm2 => "inner-outer-d-form2",
        }
    }
}

/// Dimension and count witnesses attached to every certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RanksWitness {
    pub rank: usize,
    pub dim_s: usize,
    pub dim_fix_sigma1: usize,
    pub omega_count: usize,
    pub bound_lhs: usize,
    pub bound_rhs: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_outer_fixed_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_length: Option<usize>,
}

/// A formality certificate: the selected case path plus computed witnesses.
/// Certificates never claim non-formality; a failing witness surfaces as a
/// counterexample error instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate<I: Scalar> {
    pub stype: SystemType,
    pub case_path: CasePath,
    pub omega_normal_form: Vec<Root<I>>,
    pub normal_word: WeylWord,
    pub star: bool,
    pub parity_even: bool,
    pub lift: bool,
    pub chain_basis: Option<bool>,
    pub ranks: RanksWitness,
    pub citations: Vec<&'static str>,
    pub verdict: &'static str,
}

fn canonical_flip<I: Scalar>(rs: &RootSystem<I>) -> Result<DiagramAut> {
    let r = rs.rank();
    match rs.stype().family() {
        Family::A if r == 1 => Err(Error::NoOuter("A1".into())),
        Family::A => DiagramAut::new(rs, (0..r).map(|i| r - 1 - i).collect()),
        Family::D => {
            let mut perm: Vec<usize> = (0..r).collect();
            perm.swap(r - 2, r - 1);
            DiagramAut::new(rs, perm)
        }
        Family::E if r == 6 => diagram_automorphisms(rs)
            .into_iter()
            .find(|a| !a.is_identity())
            .ok_or_else(|| Error::NoOuter("E6".into())),
        _ => Err(Error::NoOuter(rs.stype().to_string())),
    }
}

/// Parity of the vanishing-set parity function at every nu-fixed positive
/// root (the invariant evenness criterion for inner second factors).
fn parity_even_at_fixed<I: Scalar>(
    rs: &RootSystem<I>,
    omega: &OrthoSet<I>,
    nu: &DiagramAut,
) -> Result<bool> {
    let mnu = crate::diagram::induced_lattice_map(rs, nu);
    for beta in rs.positives() {
        if mnu.apply_root(beta) == *beta && parity(rs, omega, beta)?.is_odd() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Build the certificate for a commuting pair on a simple system. The pair
/// must be presented in adapted coordinates: the vanishing set has to be
/// fixed rootwise by the diagram part of the second automorphism whenever a
/// normal form is required, and the reflective property must hold.
pub fn formality_certificate<I: Scalar>(
    rs: &RootSystem<I>,
    sigma1: TorusAut<I>,
    sigma2: TorusAut<I>,
) -> Result<Certificate<I>> {
    let pair = make_pair(rs, sigma1, sigma2)?;
    certificate_from_pair(rs, &pair)
}

fn certificate_from_pair<I: Scalar>(
    rs: &RootSystem<I>,
    pair: &PairSetup<I>,
) -> Result<Certificate<I>> {
    let star = check_property_star(pair);
    if !star {
        return Err(Error::CounterexampleFound(format!(
            "second automorphism does not reflect the vanishing set {:?}; \
             the pair is not in adapted position",
            pair.omega_pos()
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
        )));
    }
    let omega = OrthoSet::new(rs, pair.omega_pos().to_vec())?;
    let nu2 = pair.sigma2.diag_part().clone();
    let inner1 = pair.sigma1.is_inner_class();
    let inner2 = pair.sigma2.is_inner_class();

    let bound = crate::torusauto::rank_bound(rs, pair)?;
    let mut ranks = RanksWitness {
        rank: rs.rank(),
        dim_s: pair.s.dim(),
        dim_fix_sigma1: matrix_fixed_subspace(pair.sigma1.compiled()).dim(),
        omega_count: omega.len(),
        bound_lhs: bound.lhs,
        bound_rhs: bound.rhs,
        min_outer_fixed_rank: None,
        chain_length: None,
    };

    let fixed_ok = omega
        .roots()
        .iter()
        .all(|r| crate::diagram::induced_lattice_map(rs, &nu2).apply_root(r) == *r);

    // normal form of the vanishing set along the diagram part, when defined
    let (normal_word, normalized) = if fixed_ok {
        normal_form(rs, &omega, &nu2)?
    } else {
        (WeylWord::empty(), omega.clone())
    };

    let parity_even = parity_even_at_fixed(rs, &normalized, &nu2)?;
    let lift = if rs.stype().family() == Family::G {
        false
    } else {
        lifts_to_involution(rs, &normalized)?
    };

    let (case_path, chain_basis, citations): (CasePath, Option<bool>, Vec<&'static str>) =
        if inner1 == inner2 {
            (
                CasePath::BothInnerOrBothOuter,
                None,
                vec![
                    "reflective-vanishing-set",
                    "same-outer-class-involution-lift",
                    "z2xz2-isotropy-formality",
                ],
            )
        } else if !inner1 && inner2 {
            (
                CasePath::OuterInner,
                None,
                vec![
                    "compose-with-involution",
                    "same-outer-class-involution-lift",
                    "shared-maximal-torus",
                ],
            )
        } else {
            // inner sigma1, outer sigma2: type-by-type analysis
            match rs.stype().family() {
                Family::E => {
                    ranks.min_outer_fixed_rank =
                        Some(min_outer_fixed_rank::<I>(rs.stype())?);
                    (
                        CasePath::InnerOuterE6,
                        None,
                        vec![
                            "fixed-rank-lower-bound",
                            "outer-fixed-rank",
                            "shared-maximal-torus",
                        ],
                    )
                }
                Family::A => {
                    if !fixed_ok {
                        return Err(Error::PreconditionViolated(
                            "vanishing set is not fixed by the diagram part".into(),
                        ));
                    }
                    let m = normalized.len();
                    if m > 0 {
                        let chain = a_series_chain(rs, m)?;
                        if chain.as_sorted_set() != normalized.as_sorted_set() {
                            return Err(Error::CounterexampleFound(format!(
                                "normalized vanishing set {normalized} is not the initial chain"
                            )));
                        }
                    }
                    ranks.chain_length = Some(m);
                    let cb = a_chain_basis_identity(rs, pair, &normal_word, m)?;
                    if !cb {
                        return Err(Error::CounterexampleFound(
                            "residual chain roots do not span the joint fixed space".into(),
                        ));
                    }
                    (
                        CasePath::InnerOuterA,
                        Some(cb),
                        vec![
                            "chain-basis-span",
                            "diagram-automorphism-tnhz",
                            "tnhz-isotropy-formality",
                        ],
                    )
                }
                Family::D => {
                    if nu2.order() == 3 {
                        ranks.min_outer_fixed_rank =
                            Some(min_outer_fixed_rank::<I>(rs.stype())?);
                        (
                            CasePath::InnerOuterDOrder3,
                            None,
                            vec![
                                "outer-fixed-rank",
                                "rank-one-subgroup-tnhz",
                                "shared-maximal-torus",
                            ],
                        )
                    } else if omega.is_empty() {
                        // empty vanishing set: the second automorphism is
                        // conjugate to a positivity-preserving one and the
                        // fixed torus is shared with its full fixed group
                        (
                            CasePath::InnerOuterDForm1,
                            None,
                            vec!["empty-vanishing-set", "shared-maximal-torus"],
                        )
                    } else {
                        let c = classify_d_normal_form(rs, &omega, &nu2)?;
                        match c.form {
                            DNormalForm::Form1 { m } => {
                                ranks.chain_length = Some(m);
                                if !lift {
                                    return Err(Error::CounterexampleFound(
                                        "paired form must lift to an involution".into(),
                                    ));
                                }
                                (
                                    CasePath::InnerOuterDForm1,
                                    None,
                                    vec![
                                        "involution-lift-even-parity",
                                        "z2xz2-isotropy-formality",
                                    ],
                                )
                            }
                            DNormalForm::Form2 { k } => {
                                ranks.chain_length = Some(k);
                                (
                                    CasePath::InnerOuterDForm2,
                                    None,
                                    vec![
                                        "odd-parity-obstruction",
                                        "a-series-reduction",
                                        "diagram-automorphism-tnhz",
                                        "tnhz-isotropy-formality",
                                    ],
                                )
                            }
                        }
                    }
                }
                _ => {
                    return Err(Error::InternalInvariantViolation(
                        "outer second factor on a family without diagram automorphisms".into(),
                    ))
                }
            }
        };

    Ok(Certificate {
        stype: rs.stype(),
        case_path,
        omega_normal_form: normalized.roots().to_vec(),
        normal_word,
        star,
        parity_even,
        lift,
        chain_basis,
        ranks,
        citations,
        verdict: "isotropy formal",
    })
}

/// For the A-series path: after normalization the residual chain roots
/// delta_{m+1}, ..., delta_ceil span the image of the joint fixed space.
fn a_chain_basis_identity<I: Scalar>(
    rs: &RootSystem<I>,
    pair: &PairSetup<I>,
    word: &WeylWord,
    m: usize,
) -> Result<bool> {
    let n = rs.rank();
    let ell = n.div_ceil(2);
    let full = a_series_chain(rs, ell)?;
    let target: Vec<Vec<crate::scalar::Rat<I>>> = full
        .roots()
        .iter()
        .skip(m)
        .map(|r| linalg::to_rat_vec(&r.0))
        .collect();
    let wm = word.to_matrix(rs);
    let moved: Vec<Vec<crate::scalar::Rat<I>>> = pair
        .s
        .basis()
        .iter()
        .map(|v| wm.apply_rat(v))
        .collect();
    Ok(linalg::same_span(&target, &moved))
}

/// Re-execute every witness embedded in a certificate against the module
/// operations and compare with the recorded values.
pub fn reverify<I: Scalar>(
    rs: &RootSystem<I>,
    sigma1: TorusAut<I>,
    sigma2: TorusAut<I>,
    cert: &Certificate<I>,
) -> Result<()> {
    let fresh = formality_certificate(rs, sigma1.clone(), sigma2.clone())?;
    if fresh != *cert {
        return Err(Error::InternalInvariantViolation(
            "certificate does not reproduce".into(),
        ));
    }
    // spot re-executions of individual witnesses
    let pair = make_pair(rs, sigma1, sigma2)?;
    if check_property_star(&pair) != cert.star {
        return Err(Error::InternalInvariantViolation("star witness".into()));
    }
    let normalized = OrthoSet::new(rs, cert.omega_normal_form.clone())?;
    if rs.stype().family() != Family::G
        && lifts_to_involution(rs, &normalized)? != cert.lift
    {
        return Err(Error::InternalInvariantViolation("lift witness".into()));
    }
    if parity_even_at_fixed(rs, &normalized, pair.sigma2.diag_part())? != cert.parity_even {
        return Err(Error::InternalInvariantViolation("parity witness".into()));
    }
    let bound = crate::torusauto::rank_bound(rs, &pair)?;
    if bound.lhs != cert.ranks.bound_lhs || bound.rhs != cert.ranks.bound_rhs {
        return Err(Error::InternalInvariantViolation("rank witness".into()));
    }
    if fixed_subspace(&pair.sigma1).dim() != cert.ranks.dim_fix_sigma1 {
        return Err(Error::InternalInvariantViolation(
            "fixed-space witness".into(),
        ));
    }
    if let Some(r) = cert.ranks.min_outer_fixed_rank {
        if min_outer_fixed_rank::<I>(rs.stype())? != r {
            return Err(Error::InternalInvariantViolation(
                "outer fixed rank witness".into(),
            ));
        }
    }
    Ok(())
}

/// JSON document for a certificate, with a stable field order.
#[derive(Debug, Serialize)]
struct CertificateJson {
    case_path: &'static str,
    witnesses: WitnessesJson,
    citations: Vec<&'static str>,
    verdict: &'static str,
}

#[derive(Debug, Serialize)]
struct WitnessesJson {
    omega_normal_form: Vec<Vec<i64>>,
    normal_word: Vec<usize>,
    star: bool,
    parity_even: bool,
    lift: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    chain_basis: Option<bool>,
    ranks: RanksWitness,
}

impl<I: Scalar> Certificate<I> {
    fn json_doc(&self) -> CertificateJson {
        CertificateJson {
            case_path: self.case_path.as_str(),
            witnesses: WitnessesJson {
                omega_normal_form: self
                    .omega_normal_form
                    .iter()
                    .map(|r| r.0.iter().map(|c| c.to_i64().expect("small coeff")).collect())
                    .collect(),
                normal_word: self.normal_word.letters().to_vec(),
                star: self.star,
                parity_even: self.parity_even,
                lift: self.lift,
                chain_basis: self.chain_basis,
                ranks: self.ranks.clone(),
            },
            citations: self.citations.clone(),
            verdict: self.verdict,
        }
    }

    /// Compact JSON with the documented field order.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.json_doc()).expect("certificate serialization")
    }

    /// Pretty-printed JSON with the documented field order.
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.json_doc()).expect("certificate serialization")
    }
}

// ---------------------------------------------------------------------------
// fixed pipeline scenarios
// ---------------------------------------------------------------------------

/// How to build one torus automorphism of a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSpec {
    pub word: Vec<usize>,
    pub reflections: Vec<Vec<i64>>,
    pub nu: NuSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NuSpec {
    Id,
    /// The canonical nontrivial involution of the diagram (A reversal,
    /// D fork swap, E6 involution).
    Flip,
    /// The first order-3 rotation of the D4 diagram.
    Rot,
    /// Explicit 1-based images.
    Perm(Vec<usize>),
}

impl SigmaSpec {
    pub fn id() -> Self {
        SigmaSpec {
            word: vec![],
            reflections: vec![],
            nu: NuSpec::Id,
        }
    }

    pub fn reflections(roots: &[&[i64]]) -> Self {
        SigmaSpec {
            word: vec![],
            reflections: roots.iter().map(|r| r.to_vec()).collect(),
            nu: NuSpec::Id,
        }
    }

    pub fn with_nu(mut self, nu: NuSpec) -> Self {
        self.nu = nu;
        self
    }

    pub fn build<I: Scalar>(&self, rs: &RootSystem<I>) -> Result<TorusAut<I>> {
        let nu = match &self.nu {
            NuSpec::Id => DiagramAut::identity(rs.rank()),
            NuSpec::Flip => canonical_flip(rs)?,
            NuSpec::Rot => diagram_automorphisms(rs)
                .into_iter()
                .find(|a| a.order() == 3)
                .ok_or_else(|| Error::NoOuter(rs.stype().to_string()))?,
            NuSpec::Perm(images) => DiagramAut::from_one_based(rs, images)?,
        };
        let word = WeylWord::new(self.word.clone(), rs.rank())?;
        let roots: Vec<Root<I>> = self
            .reflections
            .iter()
            .map(|r| {
                rs.root_from_coeffs(
                    r.iter().map(|&c| crate::scalar::from_i64::<I>(c)).collect(),
                )
            })
            .collect::<Result<_>>()?;
        TorusAut::from_word_and_reflections(rs, &word, &roots, nu)
    }
}

/// One fixed certification scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: &'static str,
    pub stype: &'static str,
    pub sigma1: SigmaSpec,
    pub sigma2: SigmaSpec,
    pub expect: CasePath,
}

/// The fixed scenario battery: twenty pairs covering all seven case paths.
/// Every pair is presented in adapted coordinates, so its vanishing set is
/// strongly orthogonal and reflected by the second automorphism.
pub fn standard_scenarios() -> Vec<Scenario> {
    use CasePath::*;
    let s = |name, stype, sigma1, sigma2, expect| Scenario {
        name,
        stype,
        sigma1,
        sigma2,
        expect,
    };
    vec![
        // both inner (or both outer)
        s(
            "d4-trivial-pair",
            "D4",
            SigmaSpec::id(),
            SigmaSpec::id(),
            BothInnerOrBothOuter,
        ),
        s(
            "d4-equal-reflection-pairs",
            "D4",
            SigmaSpec::reflections(&[&[1, 2, 1, 1], &[1, 0, 0, 0]]),
            SigmaSpec::reflections(&[&[1, 2, 1, 1], &[1, 0, 0, 0]]),
            BothInnerOrBothOuter,
        ),
        s(
            "a3-equal-reflection-pairs",
            "A3",
            SigmaSpec::reflections(&[&[1, 1, 1], &[0, 1, 0]]),
            SigmaSpec::reflections(&[&[1, 1, 1], &[0, 1, 0]]),
            BothInnerOrBothOuter,
        ),
        s(
            "b3-inner-pair",
            "B3",
            SigmaSpec::id(),
            SigmaSpec::reflections(&[&[1, 2, 2], &[0, 0, 1]]),
            BothInnerOrBothOuter,
        ),
        s(
            "a5-both-flips",
            "A5",
            SigmaSpec::id().with_nu(NuSpec::Flip),
            SigmaSpec::id().with_nu(NuSpec::Flip),
            BothInnerOrBothOuter,
        ),
        s(
            "d5-both-flips",
            "D5",
            SigmaSpec::id().with_nu(NuSpec::Flip),
            SigmaSpec::id().with_nu(NuSpec::Flip),
            BothInnerOrBothOuter,
        ),
        // outer involution with inner second factor
        s(
            "a5-flip-then-reflection",
            "A5",
            SigmaSpec::id().with_nu(NuSpec::Flip),
            SigmaSpec::reflections(&[&[1, 1, 1, 1, 1]]),
            OuterInner,
        ),
        s(
            "e6-flip-then-identity",
            "E6",
            SigmaSpec::id().with_nu(NuSpec::Flip),
            SigmaSpec::id(),
            OuterInner,
        ),
        s(
            "d5-flip-then-reflection",
            "D5",
            SigmaSpec::id().with_nu(NuSpec::Flip),
            SigmaSpec::reflections(&[&[1, 2, 2, 1, 1]]),
            OuterInner,
        ),
        // inner involution with outer second factor: E6
        s(
            "e6-identity-then-flip",
            "E6",
            SigmaSpec::id(),
            SigmaSpec::id().with_nu(NuSpec::Flip),
            InnerOuterE6,
        ),
        s(
            "e6-identity-then-conjugated-flip",
            "E6",
            SigmaSpec::id(),
            SigmaSpec {
                word: vec![1, 6],
                reflections: vec![],
                nu: NuSpec::Flip,
            },
            InnerOuterE6,
        ),
        // inner involution with outer second factor: A-series
        s(
            "a3-identity-then-flip",
            "A3",
            SigmaSpec::id(),
            SigmaSpec::id().with_nu(NuSpec::Flip),
            InnerOuterA,
        ),
        s(
            "a5-identity-then-flip",
            "A5",
            SigmaSpec::id(),
            SigmaSpec::id().with_nu(NuSpec::Flip),
            InnerOuterA,
        ),
        s(
            "a5-chain-one",
            "A5",
            SigmaSpec::id(),
            SigmaSpec::reflections(&[&[1, 1, 1, 1, 1]]).with_nu(NuSpec::Flip),
            InnerOuterA,
        ),
        // inner involution with order-3 outer factor on D4
        s(
            "d4-identity-then-rotation",
            "D4",
            SigmaSpec::id(),
            SigmaSpec::id().with_nu(NuSpec::Rot),
            InnerOuterDOrder3,
        ),
        s(
            "d4-identity-then-inverse-rotation",
            "D4",
            SigmaSpec::id(),
            SigmaSpec::id().with_nu(NuSpec::Perm(vec![4, 2, 1, 3])),
            InnerOuterDOrder3,
        ),
        // inner involution with flip second factor on the D-series;
        // an empty vanishing set lands in the paired form degenerately
        s(
            "d4-identity-then-flip",
            "D4",
            SigmaSpec::id(),
            SigmaSpec::id().with_nu(NuSpec::Flip),
            InnerOuterDForm1,
        ),
        s(
            "d6-identity-then-flip",
            "D6",
            SigmaSpec::id(),
            SigmaSpec::id().with_nu(NuSpec::Flip),
            InnerOuterDForm1,
        ),
        s(
            "d5-chain-form",
            "D5",
            SigmaSpec::id(),
            SigmaSpec::reflections(&[&[1, 2, 2, 1, 1], &[0, 0, 1, 1, 1]]).with_nu(NuSpec::Flip),
            InnerOuterDForm2,
        ),
        s(
            "d7-chain-form",
            "D7",
            SigmaSpec::id(),
            SigmaSpec::reflections(&[
                &[1, 2, 2, 2, 2, 1, 1],
                &[0, 0, 1, 2, 2, 1, 1],
                &[0, 0, 0, 0, 1, 1, 1],
            ])
            .with_nu(NuSpec::Flip),
            InnerOuterDForm2,
        ),
    ]
}
