//! Realizability of Chern tuples by rank-4 and rank-3 bundles, and the
//! groups B and T that count isomorphism classes with given Chern classes.
//!
//! A tuple `(u1, u2, u3, u4)` is the total Chern class of a rank-4 bundle
//! exactly when
//!
//! 1. `Sq^2 rho2(u2) = rho2(u3 + u1 u2)` in `H^6(M;Z/2)`,
//! 2. `<u4> = <p1 u2 - u1^2 u2 + u1 u3 - u2^2>` mod 3,
//! 3. `<u4> = <-u1^2 u2 + u1 u3 + (2u2^2 + p1 u2 - 3c^2 u2)/4 + c(u1 u2 - u3)/2>` mod 2.
//!
//! The right-hand side of (3) is only guaranteed to be an integer once (1)
//! holds, so conditions are evaluated in order and (2), (3) are skipped
//! when (1) fails. A rank-3 bundle exists iff `(u1, u2, u3, 0)` is rank-4
//! realizable. Realizing bundles are counted by B (rank 4) and B x T (rank 3).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abelian::{subgroup_quotient, FGAbelianGroup, GroupElement};
use crate::charclass::{ClassPolynomial, Symbol};
use crate::cohomology::{ChernTuple, Coefficients, CohomologyClass, ManifoldData};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BundleRank {
    Three,
    Four,
}

impl BundleRank {
    pub fn from_number(r: u32) -> Option<Self> {
        match r {
            3 => Some(BundleRank::Three),
            4 => Some(BundleRank::Four),
            _ => None,
        }
    }

    pub fn number(self) -> u32 {
        match self {
            BundleRank::Three => 3,
            BundleRank::Four => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition1 {
    pub holds: bool,
    /// `Sq^2 rho2(u2)`
    pub lhs: CohomologyClass,
    /// `rho2(u3 + u1 u2)`
    pub rhs: CohomologyClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition2 {
    pub holds: bool,
    pub lhs_mod3: BigInt,
    pub rhs_mod3: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition3 {
    pub holds: bool,
    /// Exact value of the right-hand side before reduction; always an integer.
    pub rhs: BigRational,
    pub lhs_mod2: BigInt,
    pub rhs_mod2: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub rank: BundleRank,
    pub realizable: bool,
    pub condition1: Condition1,
    pub condition2: Option<Condition2>,
    pub condition3: Option<Condition3>,
    pub notes: Vec<String>,
}

/// The part of a verdict that must not depend on the choice of spin^c class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictOutcome {
    pub realizable: bool,
    pub condition1: (bool, CohomologyClass, CohomologyClass),
    pub condition2: Option<(bool, BigInt, BigInt)>,
    pub condition3: Option<(bool, BigInt, BigInt)>,
}

impl Verdict {
    pub fn outcome(&self) -> VerdictOutcome {
        VerdictOutcome {
            realizable: self.realizable,
            condition1: (
                self.condition1.holds,
                self.condition1.lhs.clone(),
                self.condition1.rhs.clone(),
            ),
            condition2: self
                .condition2
                .as_ref()
                .map(|c| (c.holds, c.lhs_mod3.clone(), c.rhs_mod3.clone())),
            condition3: self
                .condition3
                .as_ref()
                .map(|c| (c.holds, c.lhs_mod2.clone(), c.rhs_mod2.clone())),
        }
    }

    /// Verdict of each condition in order, `None` for conditions not evaluated.
    pub fn conditions(&self) -> [Option<bool>; 3] {
        [
            Some(self.condition1.holds),
            self.condition2.as_ref().map(|c| c.holds),
            self.condition3.as_ref().map(|c| c.holds),
        ]
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "pass" } else { "FAIL" };
        writeln!(
            f,
            "rank {}: {}",
            self.rank.number(),
            if self.realizable {
                "REALIZABLE"
            } else {
                "NOT REALIZABLE"
            }
        )?;
        let c1 = &self.condition1;
        writeln!(
            f,
            "  (1) Sq2 rho2 u2 = rho2(u3 + u1 u2): {}  lhs={} rhs={}",
            mark(c1.holds),
            bits(&c1.lhs),
            bits(&c1.rhs)
        )?;
        match &self.condition2 {
            Some(c) => writeln!(
                f,
                "  (2) mod 3: {}  <u4>={} rhs={}",
                mark(c.holds),
                c.lhs_mod3,
                c.rhs_mod3
            )?,
            None => writeln!(f, "  (2) mod 3: not evaluated")?,
        }
        match &self.condition3 {
            Some(c) => writeln!(
                f,
                "  (3) mod 2: {}  <u4>={} rhs={} (exact {})",
                mark(c.holds),
                c.lhs_mod2,
                c.rhs_mod2,
                c.rhs
            )?,
            None => writeln!(f, "  (3) mod 2: not evaluated")?,
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

fn bits(c: &CohomologyClass) -> String {
    let v: Vec<String> = c.coords().iter().map(ToString::to_string).collect();
    format!("[{}]", v.join(","))
}

/// `<p1 u2 - u1^2 u2 + u1 u3 - u2^2, [M]>`
pub fn mod3_polynomial() -> ClassPolynomial {
    use Symbol::*;
    ClassPolynomial::from_terms(&[
        (1, 1, &[P1, U2]),
        (-1, 1, &[U1, U1, U2]),
        (1, 1, &[U1, U3]),
        (-1, 1, &[U2, U2]),
    ])
}

/// `<-u1^2 u2 + u1 u3 + (2u2^2 + p1 u2 - 3c^2 u2)/4 + c(u1 u2 - u3)/2, [M]>`
pub fn mod2_polynomial() -> ClassPolynomial {
    use Symbol::*;
    ClassPolynomial::from_terms(&[
        (-1, 1, &[U1, U1, U2]),
        (1, 1, &[U1, U3]),
        (2, 4, &[U2, U2]),
        (1, 4, &[P1, U2]),
        (-3, 4, &[C, C, U2]),
        (1, 2, &[C, U1, U2]),
        (-1, 2, &[C, U3]),
    ])
}

fn condition1(data: &ManifoldData, u: &ChernTuple) -> Result<Condition1> {
    let lhs = data.sq2(&data.rho2(&u.u2)?)?;
    let sum = data.add(&u.u3, &data.cup(&u.u1, &u.u2)?)?;
    let rhs = data.rho2(&sum)?;
    Ok(Condition1 {
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

fn evaluate(data: &ManifoldData, u: &ChernTuple, rank: BundleRank) -> Result<Verdict> {
    let condition1 = condition1(data, u)?;
    let mut verdict = Verdict {
        rank,
        realizable: false,
        condition1,
        condition2: None,
        condition3: None,
        notes: Vec::new(),
    };
    if !verdict.condition1.holds {
        verdict
            .notes
            .push("condition (1) fails; (2) and (3) not evaluated".into());
        return Ok(verdict);
    }

    let three = BigInt::from(3);
    let two = BigInt::from(2);
    let top = data.pair_top(&u.u4)?;

    let rhs2 = mod3_polynomial().evaluate(data, u)?;
    debug_assert!(rhs2.is_integer());
    let c2 = Condition2 {
        holds: false,
        lhs_mod3: top.mod_floor(&three),
        rhs_mod3: rhs2.to_integer().mod_floor(&three),
    };
    let c2 = Condition2 {
        holds: c2.lhs_mod3 == c2.rhs_mod3,
        ..c2
    };

    let rhs3 = mod2_polynomial().evaluate(data, u)?;
    if !rhs3.is_integer() {
        return Err(Error::InternalInconsistency(format!(
            "condition (1) holds but the condition (3) expression is {rhs3}, not an integer; \
             the manifold data is inconsistent"
        )));
    }
    let lhs_mod2 = top.mod_floor(&two);
    let rhs_mod2 = rhs3.to_integer().mod_floor(&two);
    let c3 = Condition3 {
        holds: lhs_mod2 == rhs_mod2,
        rhs: rhs3,
        lhs_mod2,
        rhs_mod2,
    };

    verdict.realizable = c2.holds && c3.holds;
    verdict.condition2 = Some(c2);
    verdict.condition3 = Some(c3);
    Ok(verdict)
}

pub fn check_rank4(data: &ManifoldData, u: &ChernTuple) -> Result<Verdict> {
    evaluate(data, u, BundleRank::Four)
}

pub fn check_rank3(
    data: &ManifoldData,
    u1: &CohomologyClass,
    u2: &CohomologyClass,
    u3: &CohomologyClass,
) -> Result<Verdict> {
    let u4 = data.zero_class(8, Coefficients::Integers)?;
    let u = ChernTuple::new(u1.clone(), u2.clone(), u3.clone(), u4)?;
    evaluate(data, &u, BundleRank::Three)
}

fn as_element(group: &FGAbelianGroup, x: &CohomologyClass) -> Result<GroupElement> {
    group.element(x.coords().to_vec())
}

/// `B = beta H^5(M;Z/2) / beta Sq^2 rho2 H^3(M;Z)` as a subquotient of `H^6(M;Z)`.
pub fn compute_b(data: &ManifoldData) -> Result<FGAbelianGroup> {
    let h6 = &data.integral[6];
    let numerator = (0..data.mod2_dim(5))
        .map(|i| as_element(h6, &data.beta(&data.mod2_basis(5, i)?)?))
        .collect::<Result<Vec<_>>>()?;
    let denominator = (0..data.ngens(3))
        .map(|j| {
            let y = data.generator(3, j)?;
            as_element(h6, &data.beta(&data.sq2(&data.rho2(&y)?)?)?)
        })
        .collect::<Result<Vec<_>>>()?;
    subgroup_quotient(h6, &numerator, &denominator)
}

/// `T = H^7(M;Z) / { g7 + u1 g5 + u2 g3 + u3 g1 }` over the supplied odd
/// generators of the image of `[M, U]`.
pub fn compute_t(
    data: &ManifoldData,
    u1: &CohomologyClass,
    u2: &CohomologyClass,
    u3: &CohomologyClass,
) -> Result<FGAbelianGroup> {
    let gens = data
        .odd_generators
        .as_ref()
        .ok_or(Error::OddGeneratorsUnavailable)?;
    let h7 = &data.integral[7];
    let product = |u: &CohomologyClass, g: &CohomologyClass| -> Result<CohomologyClass> {
        if u.is_zero() || g.is_zero() {
            data.zero_class(7, Coefficients::Integers)
        } else {
            data.cup(u, g)
        }
    };
    let mut denominator = Vec::with_capacity(gens.len());
    for g in gens {
        let mut d = g.g7.clone();
        d = data.add(&d, &product(u1, &g.g5)?)?;
        d = data.add(&d, &product(u2, &g.g3)?)?;
        d = data.add(&d, &product(u3, &g.g1)?)?;
        denominator.push(as_element(h7, &d)?);
    }
    let numerator: Vec<GroupElement> = (0..h7.ngens())
        .map(|j| as_element(h7, &data.generator(7, j)?))
        .collect::<Result<_>>()?;
    subgroup_quotient(h7, &numerator, &denominator)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChernInput {
    Rank4(ChernTuple),
    Rank3 {
        u1: CohomologyClass,
        u2: CohomologyClass,
        u3: CohomologyClass,
    },
}

impl ChernInput {
    pub fn rank(&self) -> BundleRank {
        match self {
            ChernInput::Rank4(_) => BundleRank::Four,
            ChernInput::Rank3 { .. } => BundleRank::Three,
        }
    }

    /// Rank-3 input from the first three classes of a tuple.
    pub fn rank3_from(u: &ChernTuple) -> Self {
        ChernInput::Rank3 {
            u1: u.u1.clone(),
            u2: u.u2.clone(),
            u3: u.u3.clone(),
        }
    }

    pub fn verdict(&self, data: &ManifoldData) -> Result<Verdict> {
        match self {
            ChernInput::Rank4(u) => check_rank4(data, u),
            ChernInput::Rank3 { u1, u2, u3 } => check_rank3(data, u1, u2, u3),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Census {
    Unrealizable(Verdict),
    /// The isomorphism classes with the given Chern classes are in
    /// bijection with `classes` (as a set).
    Realizable {
        verdict: Verdict,
        classes: FGAbelianGroup,
    },
}

impl Census {
    pub fn verdict(&self) -> &Verdict {
        match self {
            Census::Unrealizable(v) | Census::Realizable { verdict: v, .. } => v,
        }
    }

    pub fn classes(&self) -> Option<&FGAbelianGroup> {
        match self {
            Census::Unrealizable(_) => None,
            Census::Realizable { classes, .. } => Some(classes),
        }
    }

    /// Number of isomorphism classes: `Some(0)` when unrealizable, `None` when infinite.
    pub fn count(&self) -> Option<BigInt> {
        match self {
            Census::Unrealizable(_) => Some(BigInt::zero()),
            Census::Realizable { classes, .. } => classes.order(),
        }
    }
}

pub fn count_classes(data: &ManifoldData, input: &ChernInput) -> Result<Census> {
    let verdict = input.verdict(data)?;
    if !verdict.realizable {
        return Ok(Census::Unrealizable(verdict));
    }
    let b = compute_b(data)?;
    let classes = match input {
        ChernInput::Rank4(_) => b,
        ChernInput::Rank3 { u1, u2, u3 } => b.direct_sum(&compute_t(data, u1, u2, u3)?),
    };
    Ok(Census::Realizable { verdict, classes })
}

/// Whether `q` is an exact integer.
pub fn is_integral(q: &BigRational) -> bool {
    q.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;

    fn tuple(d: &ManifoldData, a: [i64; 4]) -> ChernTuple {
        ChernTuple::from_i64(d, [&a[0..1], &a[1..2], &a[2..3], &a[3..4]]).unwrap()
    }

    fn rank3(d: &ManifoldData, a: [i64; 3]) -> Verdict {
        let c = |deg, v: i64| d.integral_class_i64(deg, &[v]).unwrap();
        check_rank3(d, &c(2, a[0]), &c(4, a[1]), &c(6, a[2])).unwrap()
    }

    #[test]
    fn cp4_rank4_examples() {
        let d = builtin("cp4").unwrap();
        assert!(
            check_rank4(&d, &tuple(&d, [0, 0, 0, 0]))
                .unwrap()
                .realizable
        );
        assert!(
            check_rank4(&d, &tuple(&d, [4, 6, 4, 1]))
                .unwrap()
                .realizable
        );

        let v = check_rank4(&d, &tuple(&d, [0, 0, 0, 3])).unwrap();
        assert!(!v.realizable);
        assert_eq!(v.conditions(), [Some(true), Some(true), Some(false)]);
    }

    #[test]
    fn condition_one_failure_skips_the_rest() {
        let d = builtin("cp4").unwrap();
        // Sq2 rho2(t^2) = 0 but rho2(t^3 + t * 0) = t^3
        let v = check_rank4(&d, &tuple(&d, [0, 0, 1, 0])).unwrap();
        assert_eq!(v.conditions(), [Some(false), None, None]);
        assert!(!v.realizable);
    }

    #[test]
    fn cp4_rank3_examples() {
        let d = builtin("cp4").unwrap();
        assert!(rank3(&d, [0, 0, 0]).realizable);
        assert!(!rank3(&d, [0, 1, 0]).realizable);
        assert!(rank3(&d, [0, 2, 2]).realizable);
    }

    #[test]
    fn b_groups() {
        assert!(compute_b(&builtin("cp4").unwrap()).unwrap().is_trivial());
        assert!(compute_b(&builtin("hp2").unwrap()).unwrap().is_trivial());
        assert_eq!(
            compute_b(&builtin("torsion-demo").unwrap()).unwrap(),
            FGAbelianGroup::cyclic(2)
        );
    }

    #[test]
    fn t_groups() {
        let d = builtin("cp4").unwrap();
        let z = ChernTuple::zero(&d);
        assert!(compute_t(&d, &z.u1, &z.u2, &z.u3).unwrap().is_trivial());

        let odd = builtin("odd-demo").unwrap();
        let z = ChernTuple::zero(&odd);
        assert_eq!(
            compute_t(&odd, &z.u1, &z.u2, &z.u3).unwrap(),
            FGAbelianGroup::cyclic(2)
        );

        let mut bare = odd.clone();
        bare.odd_generators = None;
        let err = compute_t(&bare, &z.u1, &z.u2, &z.u3).unwrap_err();
        assert_eq!(
            err.to_string(),
            "T unavailable: supply odd unitary generators"
        );
    }

    #[test]
    fn census_counts() {
        let d = builtin("cp4").unwrap();
        let c = count_classes(&d, &ChernInput::Rank4(tuple(&d, [4, 6, 4, 1]))).unwrap();
        assert_eq!(c.count(), Some(BigInt::one()));
        let c = count_classes(&d, &ChernInput::Rank4(tuple(&d, [0, 0, 0, 1]))).unwrap();
        assert_eq!(c.count(), Some(BigInt::zero()));
        assert!(c.classes().is_none());

        let demo = builtin("torsion-demo").unwrap();
        let c = count_classes(&demo, &ChernInput::Rank4(ChernTuple::zero(&demo))).unwrap();
        assert_eq!(c.count(), Some(BigInt::from(2)));
    }

    #[test]
    fn non_integral_condition_three_is_an_error() {
        // without the factor 5 the spin^c lift is wrong and (3) stops being integral
        let mut d = builtin("cp4").unwrap();
        d.spinc = d.integral_class_i64(2, &[0]).unwrap();
        d.w2 = None;
        let err = check_rank4(&d, &tuple(&d, [0, 1, 0, 0])).unwrap_err();
        assert!(matches!(err, Error::InternalInconsistency(_)), "{err}");
    }
}
