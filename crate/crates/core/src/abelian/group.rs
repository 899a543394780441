use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z/d_1 + ... + Z/d_k + Z^r` in
/// canonical invariant-factor form. A factor of `0` is an infinite cyclic
/// summand; finite factors are all `>= 2`, form a divisibility chain, and
/// precede the infinite ones.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FGAbelianGroup {
    factors: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            factors: vec![BigInt::zero(); rank],
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_any_factors(&[order.into()])
    }

    /// Accepts a list that is already canonical; anything else is rejected.
    pub fn from_invariant_factors(factors: Vec<BigInt>) -> Result<Self> {
        let finite: Vec<&BigInt> = factors.iter().take_while(|d| !d.is_zero()).collect();
        let rest = &factors[finite.len()..];
        if rest.iter().any(|d| !d.is_zero()) {
            return Err(Error::NonCanonicalGroup(
                "finite factors must precede free factors".into(),
            ));
        }
        for (i, d) in finite.iter().enumerate() {
            if **d < BigInt::from(2) {
                return Err(Error::NonCanonicalGroup(format!(
                    "invalid invariant factor {d}"
                )));
            }
            if i + 1 < finite.len() && !finite[i + 1].is_multiple_of(d) {
                return Err(Error::NonCanonicalGroup(format!(
                    "{d} does not divide {}",
                    finite[i + 1]
                )));
            }
        }
        Ok(FGAbelianGroup { factors })
    }

    /// Canonical form of `Z/a_1 + ... + Z/a_k` for arbitrary `a_i >= 0`.
    pub fn from_any_factors(orders: &[BigInt]) -> Self {
        let rel = IntMatrix::from_diagonal(orders);
        cokernel_presentation(orders.len(), &rel).expect("square relation matrix")
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Number of generators of the canonical presentation.
    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion_factors(&self) -> &[BigInt] {
        &self.factors[..self.factors.len() - self.rank()]
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank() == 0
    }

    /// `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.is_finite() {
            Some(self.factors.iter().product())
        } else {
            None
        }
    }

    /// Order of generator `j`, `None` when it is of infinite order.
    pub fn generator_order(&self, j: usize) -> Option<&BigInt> {
        let d = &self.factors[j];
        (!d.is_zero()).then_some(d)
    }

    pub fn direct_sum(&self, other: &FGAbelianGroup) -> FGAbelianGroup {
        let mut all = self.factors.clone();
        all.extend(other.factors.iter().cloned());
        Self::from_any_factors(&all)
    }

    /// Reduces `coords` in place modulo generator orders.
    pub fn reduce(&self, coords: &mut [BigInt]) {
        for (x, d) in coords.iter_mut().zip(&self.factors) {
            if !d.is_zero() {
                *x = x.mod_floor(d);
            }
        }
    }

    /// Relation matrix of the canonical presentation (one column per finite generator).
    pub fn relation_matrix(&self) -> IntMatrix {
        let torsion = self.torsion_factors();
        let mut r = IntMatrix::zeros(self.ngens(), torsion.len());
        for (j, d) in torsion.iter().enumerate() {
            r[(j, j)] = d.clone();
        }
        r
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        GroupElement::new(self, coords)
    }

    pub fn zero_element(&self) -> GroupElement {
        GroupElement(vec![BigInt::zero(); self.ngens()])
    }

    /// All elements of a finite group, in lexicographic coordinate order.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.factors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut v: Vec<BigInt> = prefix.clone();
                    v.push(k.clone());
                    next.push(v);
                    k += 1;
                }
            }
            out = next;
        }
        Some(out.into_iter().map(GroupElement).collect())
    }
}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self
            .torsion_factors()
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        match self.rank() {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Coordinates of an element with respect to the generators of some ambient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<BigInt>);

impl GroupElement {
    pub fn new(group: &FGAbelianGroup, mut coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != group.ngens() {
            return Err(Error::Dimension {
                context: "group element".into(),
                expected: group.ngens(),
                found: coords.len(),
            });
        }
        group.reduce(&mut coords);
        Ok(GroupElement(coords))
    }

    pub fn from_i64(group: &FGAbelianGroup, coords: &[i64]) -> Result<Self> {
        Self::new(group, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &GroupElement, group: &FGAbelianGroup) -> GroupElement {
        let mut v: Vec<BigInt> = self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect();
        group.reduce(&mut v);
        GroupElement(v)
    }
}

/// `Z^gens_count / column-span(relations)` in canonical form.
pub fn cokernel_presentation(gens_count: usize, relations: &IntMatrix) -> Result<FGAbelianGroup> {
    if relations.rows() != gens_count {
        return Err(Error::Dimension {
            context: "relation matrix rows".into(),
            expected: gens_count,
            found: relations.rows(),
        });
    }
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    let mut finite = Vec::new();
    let mut free = 0;
    for i in 0..gens_count {
        match diag.get(i) {
            Some(d) if d.is_zero() => free += 1,
            Some(d) if d.is_one() => {}
            Some(d) => finite.push(d.clone()),
            None => free += 1,
        }
    }
    finite.extend(std::iter::repeat_n(BigInt::zero(), free));
    Ok(FGAbelianGroup { factors: finite })
}

/// Basis (as columns) of the integer kernel `{x : A x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let n = a.cols();
    let cols: Vec<Vec<BigInt>> = (snf.rank..n).map(|j| snf.v.column(j)).collect();
    IntMatrix::from_columns(n, &cols)
}

/// An integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < snf.rank {
            let d = &snf.d[(i, i)];
            if !c.is_multiple_of(d) {
                return None;
            }
            y[i] = c / d;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

fn element_matrix(
    ambient: &FGAbelianGroup,
    gens: &[GroupElement],
    what: &str,
) -> Result<IntMatrix> {
    let n = ambient.ngens();
    for g in gens {
        if g.coords().len() != n {
            return Err(Error::Dimension {
                context: format!("{what} generator"),
                expected: n,
                found: g.coords().len(),
            });
        }
    }
    let cols: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords().to_vec()).collect();
    Ok(IntMatrix::from_columns(n, &cols))
}

/// The quotient `<numerator> / <denominator>` of subgroups of `ambient`.
pub fn subgroup_quotient(
    ambient: &FGAbelianGroup,
    numerator: &[GroupElement],
    denominator: &[GroupElement],
) -> Result<FGAbelianGroup> {
    let n_mat = element_matrix(ambient, numerator, "numerator")?;
    let d_mat = element_matrix(ambient, denominator, "denominator")?;
    let rel = ambient.relation_matrix();

    let span = n_mat.hstack(&rel);
    for (index, g) in denominator.iter().enumerate() {
        if solve_integer(&span, g.coords()).is_none() {
            return Err(Error::NotContained { index });
        }
    }

    // <N>/<D> = Z^p / { x : N x in <D> + relations }.
    let p = numerator.len();
    let mut combined = n_mat.clone();
    let mut neg = d_mat.hstack(&rel);
    for i in 0..neg.rows() {
        neg.negate_row(i);
    }
    combined = combined.hstack(&neg);
    let kernel = integer_kernel(&combined);
    let mut projected = IntMatrix::zeros(p, kernel.cols());
    for i in 0..p {
        for j in 0..kernel.cols() {
            projected[(i, j)] = kernel[(i, j)].clone();
        }
    }
    cokernel_presentation(p, &projected)
}

/// Whether `x` lies in the subgroup generated by `gens`.
pub fn in_subgroup(
    ambient: &FGAbelianGroup,
    gens: &[GroupElement],
    x: &GroupElement,
) -> Result<bool> {
    let span = element_matrix(ambient, gens, "subgroup")?.hstack(&ambient.relation_matrix());
    Ok(solve_integer(&span, x.coords()).is_some())
}
