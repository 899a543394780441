//! Finite description of the integral and mod-2 cohomology of a closed
//! oriented 8-manifold together with the structure the classification
//! consumes: cup products, mod-2 reduction, Bockstein, `Sq^2`, the first
//! Pontryagin class, a spin^c class and the fundamental-class pairing.
//!
//! Integral generators in each degree follow the canonical invariant-factor
//! order of the degree's group (torsion generators first, then free ones).
//! The generator of `H^0` is the unit.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::abelian::{BitMatrix, FGAbelianGroup, IntMatrix};
use crate::error::{Error, Result};

mod validate;

pub use validate::{Law, LawCheck, Outcome, ValidationReport};

pub const TOP_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Mod2,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coefficients::Integers => "Z",
            Coefficients::Mod2 => "Z/2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operation {
    Rho2,
    Beta,
    Sq2,
}

impl Operation {
    pub const ALL: [Operation; 3] = [Operation::Rho2, Operation::Beta, Operation::Sq2];

    pub fn name(self) -> &'static str {
        match self {
            Operation::Rho2 => "rho2",
            Operation::Beta => "beta",
            Operation::Sq2 => "sq2",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|op| op.name() == s)
    }

    fn source(self) -> Coefficients {
        match self {
            Operation::Rho2 => Coefficients::Integers,
            Operation::Beta | Operation::Sq2 => Coefficients::Mod2,
        }
    }

    fn target(self) -> Coefficients {
        match self {
            Operation::Rho2 | Operation::Sq2 => Coefficients::Mod2,
            Operation::Beta => Coefficients::Integers,
        }
    }

    fn degree_shift(self) -> usize {
        match self {
            Operation::Rho2 => 0,
            Operation::Beta => 1,
            Operation::Sq2 => 2,
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A cohomology class stored by its coordinates, reduced modulo generator
/// orders (bits for mod-2 classes).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomologyClass {
    degree: usize,
    coefficients: Coefficients,
    coords: Vec<BigInt>,
}

impl CohomologyClass {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn bits(&self) -> Vec<bool> {
        self.coords.iter().map(|c| c.is_odd()).collect()
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(
            f,
            "[{}] in H^{}(M;{})",
            coords.join(","),
            self.degree,
            self.coefficients
        )
    }
}

/// Structure constants of a bilinear product `H^a x H^b -> H^(a+b)`:
/// `entries[i][j]` holds the coordinates of `g_i * h_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    pub entries: Vec<Vec<Vec<BigInt>>>,
}

impl ProductTable {
    pub fn zeros(left: usize, right: usize, target: usize) -> Self {
        ProductTable {
            entries: vec![vec![vec![BigInt::zero(); target]; right]; left],
        }
    }

    pub fn set(&mut self, i: usize, j: usize, coords: Vec<BigInt>) {
        self.entries[i][j] = coords;
    }
}

/// One generator `(g1, g3, g5, g7)` of the image of `[M, U]` in odd cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddGenerator {
    pub g1: CohomologyClass,
    pub g3: CohomologyClass,
    pub g5: CohomologyClass,
    pub g7: CohomologyClass,
}

impl OddGenerator {
    pub fn classes(&self) -> [&CohomologyClass; 4] {
        [&self.g1, &self.g3, &self.g5, &self.g7]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldData {
    pub name: String,
    /// `H^n(M;Z)` for `n = 0..=8`.
    pub integral: Vec<FGAbelianGroup>,
    /// `dim H^n(M;Z/2)` for `n = 0..=8`.
    pub mod2: Vec<usize>,
    pub cup: BTreeMap<(usize, usize), ProductTable>,
    pub cup_mod2: BTreeMap<(usize, usize), ProductTable>,
    /// Keyed by source degree. Matrices act on column vectors.
    pub rho2: BTreeMap<usize, BitMatrix>,
    pub beta: BTreeMap<usize, IntMatrix>,
    pub sq2: BTreeMap<usize, BitMatrix>,
    /// `<g_j, [M]>` for the generators of `H^8`.
    pub pairing: Vec<BigInt>,
    pub p1: CohomologyClass,
    pub spinc: CohomologyClass,
    pub w2: Option<CohomologyClass>,
    pub odd_generators: Option<Vec<OddGenerator>>,
}

impl ManifoldData {
    /// Skeleton with the cohomology of `S^8`-like groups (`Z` in degrees 0
    /// and 8, nothing else) and no structure maps.
    pub fn empty(name: impl Into<String>) -> Self {
        let mut integral = vec![FGAbelianGroup::trivial(); TOP_DEGREE + 1];
        integral[0] = FGAbelianGroup::free(1);
        integral[TOP_DEGREE] = FGAbelianGroup::free(1);
        let mut mod2 = vec![0; TOP_DEGREE + 1];
        mod2[0] = 1;
        mod2[TOP_DEGREE] = 1;
        ManifoldData {
            name: name.into(),
            integral,
            mod2,
            cup: BTreeMap::new(),
            cup_mod2: BTreeMap::new(),
            rho2: BTreeMap::new(),
            beta: BTreeMap::new(),
            sq2: BTreeMap::new(),
            pairing: vec![BigInt::from(1)],
            p1: CohomologyClass {
                degree: 4,
                coefficients: Coefficients::Integers,
                coords: vec![],
            },
            spinc: CohomologyClass {
                degree: 2,
                coefficients: Coefficients::Integers,
                coords: vec![],
            },
            w2: None,
            odd_generators: None,
        }
    }

    fn check_degree(degree: usize) -> Result<()> {
        if degree > TOP_DEGREE {
            Err(Error::DegreeOutOfRange(degree))
        } else {
            Ok(())
        }
    }

    pub fn ngens(&self, degree: usize) -> usize {
        self.integral.get(degree).map_or(0, FGAbelianGroup::ngens)
    }

    pub fn mod2_dim(&self, degree: usize) -> usize {
        self.mod2.get(degree).copied().unwrap_or(0)
    }

    pub fn dim(&self, degree: usize, coefficients: Coefficients) -> usize {
        match coefficients {
            Coefficients::Integers => self.ngens(degree),
            Coefficients::Mod2 => self.mod2_dim(degree),
        }
    }

    pub fn integral_class(
        &self,
        degree: usize,
        mut coords: Vec<BigInt>,
    ) -> Result<CohomologyClass> {
        Self::check_degree(degree)?;
        let group = &self.integral[degree];
        if coords.len() != group.ngens() {
            return Err(Error::Dimension {
                context: format!("class in H^{degree}(M;Z)"),
                expected: group.ngens(),
                found: coords.len(),
            });
        }
        group.reduce(&mut coords);
        Ok(CohomologyClass {
            degree,
            coefficients: Coefficients::Integers,
            coords,
        })
    }

    pub fn integral_class_i64(&self, degree: usize, coords: &[i64]) -> Result<CohomologyClass> {
        self.integral_class(degree, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn mod2_class(&self, degree: usize, coords: Vec<BigInt>) -> Result<CohomologyClass> {
        Self::check_degree(degree)?;
        let dim = self.mod2[degree];
        if coords.len() != dim {
            return Err(Error::Dimension {
                context: format!("class in H^{degree}(M;Z/2)"),
                expected: dim,
                found: coords.len(),
            });
        }
        let coords = coords
            .into_iter()
            .map(|c| c.mod_floor(&BigInt::from(2)))
            .collect();
        Ok(CohomologyClass {
            degree,
            coefficients: Coefficients::Mod2,
            coords,
        })
    }

    pub fn zero_class(&self, degree: usize, coefficients: Coefficients) -> Result<CohomologyClass> {
        Self::check_degree(degree)?;
        let coords = vec![BigInt::zero(); self.dim(degree, coefficients)];
        Ok(CohomologyClass {
            degree,
            coefficients,
            coords,
        })
    }

    /// The `j`-th integral generator in `degree`.
    pub fn generator(&self, degree: usize, j: usize) -> Result<CohomologyClass> {
        let mut coords = vec![BigInt::zero(); self.ngens(degree)];
        if j >= coords.len() {
            return Err(Error::Dimension {
                context: format!("generator index in H^{degree}(M;Z)"),
                expected: coords.len(),
                found: j + 1,
            });
        }
        coords[j] = BigInt::from(1);
        self.integral_class(degree, coords)
    }

    pub fn mod2_basis(&self, degree: usize, j: usize) -> Result<CohomologyClass> {
        let mut coords = vec![BigInt::zero(); self.mod2_dim(degree)];
        if j >= coords.len() {
            return Err(Error::Dimension {
                context: format!("basis index in H^{degree}(M;Z/2)"),
                expected: coords.len(),
                found: j + 1,
            });
        }
        coords[j] = BigInt::from(1);
        self.mod2_class(degree, coords)
    }

    pub fn add(&self, x: &CohomologyClass, y: &CohomologyClass) -> Result<CohomologyClass> {
        self.combine(x, y, |a, b| a + b)
    }

    pub fn sub(&self, x: &CohomologyClass, y: &CohomologyClass) -> Result<CohomologyClass> {
        self.combine(x, y, |a, b| a - b)
    }

    pub fn scale(&self, k: &BigInt, x: &CohomologyClass) -> CohomologyClass {
        let coords = x.coords.iter().map(|c| c * k).collect();
        self.normalize(x.degree, x.coefficients, coords)
    }

    fn combine(
        &self,
        x: &CohomologyClass,
        y: &CohomologyClass,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<CohomologyClass> {
        if x.degree != y.degree {
            return Err(Error::DegreeMismatch {
                expected: x.degree,
                found: y.degree,
            });
        }
        if x.coefficients != y.coefficients {
            return Err(Error::RingMismatch(format!(
                "cannot combine classes over {} and {}",
                x.coefficients, y.coefficients
            )));
        }
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(self.normalize(x.degree, x.coefficients, coords))
    }

    fn normalize(
        &self,
        degree: usize,
        coefficients: Coefficients,
        mut coords: Vec<BigInt>,
    ) -> CohomologyClass {
        match coefficients {
            Coefficients::Integers => self.integral[degree].reduce(&mut coords),
            Coefficients::Mod2 => {
                let two = BigInt::from(2);
                for c in coords.iter_mut() {
                    *c = c.mod_floor(&two);
                }
            }
        }
        CohomologyClass {
            degree,
            coefficients,
            coords,
        }
    }

    fn tables(&self, coefficients: Coefficients) -> &BTreeMap<(usize, usize), ProductTable> {
        match coefficients {
            Coefficients::Integers => &self.cup,
            Coefficients::Mod2 => &self.cup_mod2,
        }
    }

    /// Whether `H^a x H^b -> H^(a+b)` is available, either from a table, by
    /// graded commutativity, or because it is forced (unit or a zero group).
    pub fn has_cup_table(&self, a: usize, b: usize, coefficients: Coefficients) -> bool {
        if a + b > TOP_DEGREE {
            return false;
        }
        if a == 0 || b == 0 {
            return true;
        }
        let forced = self.dim(a, coefficients) == 0
            || self.dim(b, coefficients) == 0
            || self.dim(a + b, coefficients) == 0;
        let tables = self.tables(coefficients);
        forced || tables.contains_key(&(a, b)) || tables.contains_key(&(b, a))
    }

    /// Cup product, extended bilinearly from the structure constants.
    pub fn cup(&self, x: &CohomologyClass, y: &CohomologyClass) -> Result<CohomologyClass> {
        if x.coefficients != y.coefficients {
            return Err(Error::RingMismatch(format!(
                "cup of classes over {} and {}",
                x.coefficients, y.coefficients
            )));
        }
        let ring = x.coefficients;
        let (a, b) = (x.degree, y.degree);
        let n = a + b;
        Self::check_degree(n)?;
        if !self.has_cup_table(a, b, ring) {
            return Err(Error::MissingCupTable(a, b));
        }
        let target = self.dim(n, ring);
        let mut out = vec![BigInt::zero(); target];
        if target == 0 {
            return Ok(self.normalize(n, ring, out));
        }
        if a == 0 {
            return Ok(self.scale(&x.coords[0], y));
        }
        if b == 0 {
            return Ok(self.scale(&y.coords[0], x));
        }
        let tables = self.tables(ring);
        let (table, swapped) = match tables.get(&(a, b)) {
            Some(t) => (Some(t), false),
            None => (tables.get(&(b, a)), true),
        };
        if let Some(table) = table {
            for (i, xi) in x.coords.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.coords.iter().enumerate() {
                    if yj.is_zero() {
                        continue;
                    }
                    let entry = if swapped {
                        &table.entries[j][i]
                    } else {
                        &table.entries[i][j]
                    };
                    let k = xi * yj;
                    for (o, e) in out.iter_mut().zip(entry) {
                        *o += &k * e;
                    }
                }
            }
            if swapped && (a * b) % 2 == 1 {
                for o in out.iter_mut() {
                    *o = -std::mem::take(o);
                }
            }
        }
        Ok(self.normalize(n, ring, out))
    }

    /// Cup product of several classes, multiplied left to right after
    /// sorting by degree (so only tables with increasing degrees are needed).
    /// Signs from reordering odd-degree factors are applied.
    pub fn cup_all(&self, factors: &[&CohomologyClass]) -> Result<CohomologyClass> {
        let mut order: Vec<usize> = (0..factors.len()).collect();
        order.sort_by_key(|&i| factors[i].degree);
        let mut sign_odd = false;
        for i in 0..order.len() {
            for j in i + 1..order.len() {
                let (p, q) = (order[i], order[j]);
                if p > q && factors[p].degree % 2 == 1 && factors[q].degree % 2 == 1 {
                    sign_odd = !sign_odd;
                }
            }
        }
        let Some((&first, rest)) = order.split_first() else {
            return self.normalize_unit();
        };
        let mut acc = factors[first].clone();
        for &i in rest {
            acc = self.cup(&acc, factors[i])?;
        }
        if sign_odd {
            acc = self.scale(&BigInt::from(-1), &acc);
        }
        Ok(acc)
    }

    fn normalize_unit(&self) -> Result<CohomologyClass> {
        self.integral_class_i64(0, &[1])
    }

    /// The Kronecker pairing `<x, [M]>` of a degree-8 integral class.
    pub fn pair_top(&self, x: &CohomologyClass) -> Result<BigInt> {
        if x.degree != TOP_DEGREE {
            return Err(Error::DegreeMismatch {
                expected: TOP_DEGREE,
                found: x.degree,
            });
        }
        if x.coefficients != Coefficients::Integers {
            return Err(Error::RingMismatch(
                "pairing needs an integral class".into(),
            ));
        }
        if x.coords.len() != self.pairing.len() {
            return Err(Error::Dimension {
                context: "pairing vector".into(),
                expected: x.coords.len(),
                found: self.pairing.len(),
            });
        }
        Ok(x.coords.iter().zip(&self.pairing).map(|(a, b)| a * b).sum())
    }

    /// The `op` matrix out of `degree`, if supplied or forced by a zero-dimensional side.
    pub fn op_matrix(&self, op: Operation, degree: usize) -> Result<OpMatrix<'_>> {
        let target_degree = degree + op.degree_shift();
        Self::check_degree(degree)?;
        let (rows, cols) = if target_degree > TOP_DEGREE {
            (0, self.dim(degree, op.source()))
        } else {
            (
                self.dim(target_degree, op.target()),
                self.dim(degree, op.source()),
            )
        };
        let stored = match op {
            Operation::Rho2 => self
                .rho2
                .get(&degree)
                .map(|m| OpMatrix::Bits(Cow::Borrowed(m))),
            Operation::Sq2 => self
                .sq2
                .get(&degree)
                .map(|m| OpMatrix::Bits(Cow::Borrowed(m))),
            Operation::Beta => self
                .beta
                .get(&degree)
                .map(|m| OpMatrix::Ints(Cow::Borrowed(m))),
        };
        match stored {
            Some(m) => {
                if m.shape() != (rows, cols) {
                    return Err(Error::MatrixShape {
                        op,
                        degree,
                        expected: (rows, cols),
                        found: m.shape(),
                    });
                }
                Ok(m)
            }
            None if rows == 0 || cols == 0 => Ok(match op {
                Operation::Beta => OpMatrix::Ints(Cow::Owned(IntMatrix::zeros(rows, cols))),
                _ => OpMatrix::Bits(Cow::Owned(BitMatrix::zeros(rows, cols))),
            }),
            None => Err(Error::MissingMatrix { op, degree }),
        }
    }

    pub fn apply_op(&self, op: Operation, x: &CohomologyClass) -> Result<CohomologyClass> {
        if x.coefficients != op.source() {
            return Err(Error::RingMismatch(format!(
                "{op} expects a class over {}, got one over {}",
                op.source(),
                x.coefficients
            )));
        }
        let target_degree = x.degree + op.degree_shift();
        Self::check_degree(target_degree)?;
        let coords = match self.op_matrix(op, x.degree)? {
            OpMatrix::Bits(m) => {
                let bits = m.mul_vec(&x.bits());
                bits.into_iter().map(BigInt::from).collect()
            }
            OpMatrix::Ints(m) => {
                let v: Vec<BigInt> = x.bits().into_iter().map(BigInt::from).collect();
                m.mul_vec(&v)
            }
        };
        Ok(self.normalize(target_degree, op.target(), coords))
    }

    pub fn rho2(&self, x: &CohomologyClass) -> Result<CohomologyClass> {
        self.apply_op(Operation::Rho2, x)
    }

    pub fn beta(&self, x: &CohomologyClass) -> Result<CohomologyClass> {
        self.apply_op(Operation::Beta, x)
    }

    pub fn sq2(&self, x: &CohomologyClass) -> Result<CohomologyClass> {
        self.apply_op(Operation::Sq2, x)
    }

    /// `w2` if supplied, otherwise `rho2(c)`.
    pub fn w2(&self) -> Result<CohomologyClass> {
        match &self.w2 {
            Some(w) => Ok(w.clone()),
            None => self.rho2(&self.spinc),
        }
    }

    pub fn validate(&self, strict: bool) -> ValidationReport {
        validate::validate_manifold(self, strict)
    }
}

/// A structure-map matrix, either over Z/2 or over Z.
#[derive(Clone, Debug)]
pub enum OpMatrix<'a> {
    Bits(Cow<'a, BitMatrix>),
    Ints(Cow<'a, IntMatrix>),
}

impl OpMatrix<'_> {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            OpMatrix::Bits(m) => (m.rows(), m.cols()),
            OpMatrix::Ints(m) => (m.rows(), m.cols()),
        }
    }
}

/// Candidate Chern classes `(u1, u2, u3, u4)` in degrees 2, 4, 6, 8.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernTuple {
    pub u1: CohomologyClass,
    pub u2: CohomologyClass,
    pub u3: CohomologyClass,
    pub u4: CohomologyClass,
}

impl ChernTuple {
    pub fn new(
        u1: CohomologyClass,
        u2: CohomologyClass,
        u3: CohomologyClass,
        u4: CohomologyClass,
    ) -> Result<Self> {
        for (k, u) in [&u1, &u2, &u3, &u4].into_iter().enumerate() {
            let expected = 2 * (k + 1);
            if u.degree != expected {
                return Err(Error::DegreeMismatch {
                    expected,
                    found: u.degree,
                });
            }
            if u.coefficients != Coefficients::Integers {
                return Err(Error::RingMismatch("Chern classes are integral".into()));
            }
        }
        Ok(ChernTuple { u1, u2, u3, u4 })
    }

    pub fn from_coords(data: &ManifoldData, coords: [Vec<BigInt>; 4]) -> Result<Self> {
        let [c1, c2, c3, c4] = coords;
        Self::new(
            data.integral_class(2, c1)?,
            data.integral_class(4, c2)?,
            data.integral_class(6, c3)?,
            data.integral_class(8, c4)?,
        )
    }

    pub fn from_i64(data: &ManifoldData, coords: [&[i64]; 4]) -> Result<Self> {
        Self::new(
            data.integral_class_i64(2, coords[0])?,
            data.integral_class_i64(4, coords[1])?,
            data.integral_class_i64(6, coords[2])?,
            data.integral_class_i64(8, coords[3])?,
        )
    }

    pub fn zero(data: &ManifoldData) -> Self {
        let z = |d| {
            data.zero_class(d, Coefficients::Integers)
                .expect("degree in range")
        };
        ChernTuple {
            u1: z(2),
            u2: z(4),
            u3: z(6),
            u4: z(8),
        }
    }

    /// `u_k` for `k = 1..=4`.
    pub fn component(&self, k: usize) -> &CohomologyClass {
        match k {
            1 => &self.u1,
            2 => &self.u2,
            3 => &self.u3,
            4 => &self.u4,
            _ => panic!("Chern component index {k} out of range"),
        }
    }

    pub fn with_u4(&self, u4: CohomologyClass) -> Result<Self> {
        Self::new(self.u1.clone(), self.u2.clone(), self.u3.clone(), u4)
    }
}

impl fmt::Display for ChernTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |c: &CohomologyClass| {
            c.coords()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "{};{};{};{}",
            part(&self.u1),
            part(&self.u2),
            part(&self.u3),
            part(&self.u4)
        )
    }
}
