//! Genericity decision for one-parameter polynomials and the obstruction
//! labels attached to non-parametric covers.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::cover::{compute_invariants, CoverError, CoverInvariants, Regularity};
use crate::exact::numfield::{has_cos_of_root_of_unity, has_root_of_unity};
use crate::exact::ring::factor_int;
use crate::exact::{BiPoly, NumberField};
use crate::galois::GroupId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("group of order {0} is too large for subgroup enumeration")]
    GroupTooLarge(usize),
    #[error("subgroup structure of a group of order {0} is not determined by its order")]
    Undetermined(usize),
}

/// The three shapes of generic covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// Cyclic of even order n, zeta_n in k, two k-rational branch points.
    A,
    /// Cyclic of odd order n, 2cos(2 pi/n) in k, two branch points.
    B,
    /// Dihedral of order 2n, n odd, 2cos(2 pi/n) in k, three k-rational branch points.
    C,
}

impl Case {
    pub fn letter(&self) -> &'static str {
        match self {
            Case::A => "a",
            Case::B => "b",
            Case::C => "c",
        }
    }
}

/// One failed condition of the genericity criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub criterion: &'static str,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.criterion, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Generic { case: Case, n: usize },
    NotGeneric { failures: Vec<Failure> },
}

impl Outcome {
    pub fn is_generic(&self) -> bool {
        matches!(self, Outcome::Generic { .. })
    }

    pub fn case(&self) -> Option<Case> {
        match self {
            Outcome::Generic { case, .. } => Some(*case),
            Outcome::NotGeneric { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GenericityVerdict {
    pub outcome: Outcome,
    /// False when the group or the regularity verdict rests on sampling.
    pub certified: bool,
    pub invariants: CoverInvariants,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Obstruction {
    /// Not K(U)-parametric for ample K (genus at least 1).
    AmpleK,
    /// Not K((V))(U)-parametric for algebraically closed K (non-cyclic abelian subgroup).
    AlgClosedKV,
    /// Not k(U)-parametric (a branch point outside P^1(k) in the cyclic or odd dihedral shape).
    RationalKU,
}

impl Obstruction {
    pub fn label(&self) -> &'static str {
        match self {
            Obstruction::AmpleK => "NotParametricOver_K_U_for_ample_K",
            Obstruction::AlgClosedKV => "NotParametricOver_KVU_for_alg_closed_K",
            Obstruction::RationalKU => "NotParametricOver_k_U",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ObstructionVerdict {
    pub labels: Vec<Obstruction>,
    pub witnesses: Vec<String>,
}

fn squarefree(n: usize) -> bool {
    factor_int(&(n as u64).into()).iter().all(|(_, e)| *e == 1)
}

/// Whether the group contains a subgroup isomorphic to C_p x C_p.
pub fn has_noncyclic_abelian(g: &GroupId) -> Result<bool, ClassifyError> {
    match g {
        GroupId::Cyclic(_) => Ok(false),
        GroupId::Dihedral(n) => Ok(n.is_even()),
        GroupId::V4 | GroupId::A4 | GroupId::S4 | GroupId::A5 => Ok(true),
        GroupId::Sn(n) => Ok(*n >= 4),
        GroupId::Other(o) if *o > 24 => Err(ClassifyError::GroupTooLarge(*o)),
        // all Sylow subgroups are cyclic, hence every abelian subgroup is
        GroupId::Other(o) if squarefree(*o) => Ok(false),
        // the transitive group of order 20 in degree 5 is C5 : C4
        GroupId::Other(20) => Ok(false),
        GroupId::Other(o) => Err(ClassifyError::Undetermined(*o)),
    }
}

fn fail(out: &mut Vec<Failure>, criterion: &'static str, detail: impl Into<String>) {
    out.push(Failure { criterion, detail: detail.into() });
}

/// The genericity criterion evaluated on precomputed invariants.
pub fn verdict_from(inv: CoverInvariants, k: &NumberField) -> GenericityVerdict {
    let mut failures = Vec::new();
    let g = &inv.group.group;
    match inv.regular {
        Regularity::Yes => {}
        Regularity::No => fail(&mut failures, "regular", "the splitting field contains a nontrivial constant extension"),
        Regularity::Unknown => fail(&mut failures, "regular", "regularity could not be decided"),
    }
    let shape = match g {
        GroupId::Cyclic(n) if *n >= 2 && n.is_even() => Some((Case::A, *n)),
        GroupId::Cyclic(n) if *n >= 3 => Some((Case::B, *n)),
        GroupId::Dihedral(n) if n.is_odd() => Some((Case::C, *n)),
        _ => None,
    };
    let Some((case, n)) = shape else {
        fail(&mut failures, "group", format!("{g} is neither cyclic of order at least 2 nor dihedral of order 2n with n odd"));
        return finish(inv, failures, None);
    };
    let want_r = if case == Case::C { 3 } else { 2 };
    match case {
        Case::A => {
            if !has_root_of_unity(k, n as u64) {
                fail(&mut failures, "root_of_unity", format!("zeta_{n} is not in {}", k.name()));
            }
        }
        Case::B | Case::C => {
            if !has_cos_of_root_of_unity(k, n as u64) {
                fail(&mut failures, "cos_root_of_unity", format!("2cos(2pi/{n}) is not in {}", k.name()));
            }
        }
    }
    if inv.r != want_r {
        fail(&mut failures, "branch_count", format!("r = {} but the shape needs r = {want_r}", inv.r));
    }
    if case != Case::B && !inv.all_branch_in_k {
        fail(&mut failures, "branch_rational", format!("some branch point is not in P^1({})", k.name()));
    }
    finish(inv, failures, Some((case, n)))
}

fn finish(inv: CoverInvariants, failures: Vec<Failure>, shape: Option<(Case, usize)>) -> GenericityVerdict {
    let certified = inv.group.certified && inv.regular != Regularity::Unknown;
    let outcome = match shape {
        Some((case, n)) if failures.is_empty() => Outcome::Generic { case, n },
        _ => Outcome::NotGeneric { failures },
    };
    GenericityVerdict { outcome, certified, invariants: inv }
}

/// Decide whether P is generic over k.
pub fn decide_genericity(p: &BiPoly, k: &NumberField) -> Result<GenericityVerdict, ClassifyError> {
    Ok(verdict_from(compute_invariants(p, k)?, k))
}

/// Obstruction labels from precomputed invariants.
pub fn obstructions_from(inv: &CoverInvariants) -> Result<ObstructionVerdict, ClassifyError> {
    let mut v = ObstructionVerdict::default();
    let g = &inv.group.group;
    if inv.genus >= 1 {
        v.labels.push(Obstruction::AmpleK);
        v.witnesses.push(format!("genus {} >= 1", inv.genus));
    }
    if has_noncyclic_abelian(g)? {
        v.labels.push(Obstruction::AlgClosedKV);
        v.witnesses.push(format!("{g} has a non-cyclic abelian subgroup"));
    }
    if !inv.all_branch_in_k {
        match g {
            GroupId::Cyclic(n) if n.is_even() && inv.r == 2 => {
                v.labels.push(Obstruction::RationalKU);
                v.witnesses.push(format!("3(a): cyclic of even order {n}, r = 2, a branch point outside P^1(k)"));
            }
            GroupId::Dihedral(n) if n.is_odd() && inv.r == 3 => {
                v.labels.push(Obstruction::RationalKU);
                v.witnesses.push(format!("3(b): dihedral of order {}, r = 3, a branch point outside P^1(k)", 2 * n));
            }
            _ => {}
        }
    }
    Ok(v)
}

pub fn obstruction_report(p: &BiPoly, k: &NumberField) -> Result<ObstructionVerdict, ClassifyError> {
    obstructions_from(&compute_invariants(p, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio, UniPoly};

    fn bi(cs: &[&[i64]]) -> BiPoly {
        BiPoly::from_y_coeffs(&cs.iter().map(|c| UniPoly::from_ints(c)).collect::<Vec<_>>())
    }

    #[test]
    fn canonical_examples() {
        let q = NumberField::rationals();
        let cases: Vec<_> = [bi(&[&[0, -1], &[], &[1]]), bi(&[&[1], &[-3, 1], &[0, -1], &[1]]), bi(&[&[0, 1], &[0, 1], &[], &[1]])]
            .iter()
            .map(|p| decide_genericity(p, &q).unwrap().outcome)
            .collect();
        assert_eq!(
            cases,
            vec![
                Outcome::Generic { case: Case::A, n: 2 },
                Outcome::Generic { case: Case::B, n: 3 },
                Outcome::Generic { case: Case::C, n: 3 }
            ]
        );
    }

    #[test]
    fn negative_controls() {
        let q = NumberField::rationals();
        let y4 = bi(&[&[0, -1], &[], &[], &[], &[1]]);
        let v = decide_genericity(&y4, &q).unwrap();
        assert!(!v.outcome.is_generic());
        assert!(obstruction_report(&y4, &q).unwrap().labels.contains(&Obstruction::AlgClosedKV));
        let circle = bi(&[&[-1, 0, -1], &[], &[1]]);
        assert!(!decide_genericity(&circle, &q).unwrap().outcome.is_generic());
        assert_eq!(obstruction_report(&circle, &q).unwrap().labels, vec![Obstruction::RationalKU]);
        let c = UniPoly::new(vec![ratio(-41, 4), rat(7), rat(1), rat(-1)]);
        let ell = BiPoly::from_y_coeffs(&[c, UniPoly::new(vec![]), UniPoly::from_ints(&[1])]);
        assert_eq!(obstruction_report(&ell, &q).unwrap().labels, vec![Obstruction::AmpleK]);
    }

    #[test]
    fn kummer_over_cyclotomic_fields() {
        let y4 = bi(&[&[0, -1], &[], &[], &[], &[1]]);
        let qi = NumberField::gaussian();
        assert_eq!(decide_genericity(&y4, &qi).unwrap().outcome, Outcome::Generic { case: Case::A, n: 4 });
        let y6 = bi(&[&[0, -1], &[], &[], &[], &[], &[], &[1]]);
        let k3 = NumberField::cyclotomic(3).unwrap();
        assert_eq!(decide_genericity(&y6, &k3).unwrap().outcome, Outcome::Generic { case: Case::A, n: 6 });
    }

    #[test]
    fn noncyclic_abelian_table() {
        assert!(!has_noncyclic_abelian(&GroupId::Cyclic(12)).unwrap());
        assert!(has_noncyclic_abelian(&GroupId::Dihedral(4)).unwrap());
        assert!(!has_noncyclic_abelian(&GroupId::Dihedral(3)).unwrap());
        assert!(!has_noncyclic_abelian(&GroupId::Other(20)).unwrap());
        assert!(has_noncyclic_abelian(&GroupId::Other(60)).is_err());
    }
}
