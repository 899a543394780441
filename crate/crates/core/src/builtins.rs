//! Built-in manifold descriptions.
//!
//! The torsion-free fixtures are generated from presentations of their
//! cohomology rings as tensor products of truncated polynomial algebras
//! (even generators) and exterior algebras (odd generators). `torsion-demo`
//! and `odd-demo` are synthetic data sets with hand-chosen structure maps;
//! they exercise the indeterminacy groups and are not claimed to be the
//! cohomology of any particular manifold's bundles.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{BitMatrix, FGAbelianGroup, IntMatrix};
use crate::cohomology::{Coefficients, ManifoldData, OddGenerator, ProductTable, TOP_DEGREE};
use crate::error::{Error, Result};

pub const BUILTIN_NAMES: [&str; 7] = [
    "cp4",
    "s8",
    "hp2",
    "cp2xcp2",
    "cp1xcp3",
    "torsion-demo",
    "odd-demo",
];

pub fn builtin(name: &str) -> Result<ManifoldData> {
    let data = match name {
        "cp4" => cp4(),
        "s8" => s8(),
        "hp2" => hp2(),
        "cp2xcp2" => cp2xcp2(),
        "cp1xcp3" => cp1xcp3(),
        "torsion-demo" => torsion_demo(),
        "odd-demo" => odd_demo(),
        other => return Err(Error::UnknownBuiltin(other.into(), BUILTIN_NAMES.join("|"))),
    };
    Ok(data)
}

/// A generator of a free graded-commutative ring: `x^(max_power + 1) = 0`.
/// Odd-degree generators must have `max_power == 1`.
#[derive(Clone, Copy, Debug)]
pub struct RingGenerator {
    pub degree: usize,
    pub max_power: usize,
}

/// Torsion-free cohomology ring `⊗ Z[x_i]/(x_i^(k_i+1))` with monomial bases.
#[derive(Clone, Debug)]
pub struct MonomialRing {
    generators: Vec<RingGenerator>,
    /// Basis monomials per degree, as exponent vectors, in descending lex order.
    basis: Vec<Vec<Vec<usize>>>,
}

impl MonomialRing {
    pub fn new(generators: &[RingGenerator]) -> Self {
        for g in generators {
            assert!(g.degree > 0 && (g.degree % 2 == 0 || g.max_power == 1));
        }
        let mut all = vec![vec![]];
        for g in generators {
            let mut next = Vec::new();
            for prefix in &all {
                for e in 0..=g.max_power {
                    let mut v: Vec<usize> = prefix.clone();
                    v.push(e);
                    next.push(v);
                }
            }
            all = next;
        }
        let mut basis = vec![Vec::new(); TOP_DEGREE + 1];
        for exps in all {
            let deg: usize = exps.iter().zip(generators).map(|(e, g)| e * g.degree).sum();
            if deg <= TOP_DEGREE {
                basis[deg].push(exps);
            }
        }
        for b in basis.iter_mut() {
            b.sort_by(|x, y| y.cmp(x));
        }
        assert_eq!(
            basis[TOP_DEGREE].len(),
            1,
            "top degree must be one-dimensional"
        );
        MonomialRing {
            generators: generators.to_vec(),
            basis,
        }
    }

    pub fn rank(&self, degree: usize) -> usize {
        self.basis[degree].len()
    }

    fn index(&self, exps: &[usize]) -> Option<(usize, usize)> {
        let deg: usize = exps
            .iter()
            .zip(&self.generators)
            .map(|(e, g)| e * g.degree)
            .sum();
        if deg > TOP_DEGREE {
            return None;
        }
        self.basis[deg]
            .iter()
            .position(|b| b == exps)
            .map(|i| (deg, i))
    }

    /// Product of two basis monomials as `(sign, exponents)`, `None` when zero.
    fn multiply(&self, x: &[usize], y: &[usize]) -> Option<(i64, Vec<usize>)> {
        let mut exps = Vec::with_capacity(x.len());
        for ((a, b), g) in x.iter().zip(y).zip(&self.generators) {
            if a + b > g.max_power {
                return None;
            }
            exps.push(a + b);
        }
        // Moving the odd generators of y past those of x that come later.
        let mut swaps = 0;
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree % 2 == 1 && y[i] == 1 {
                swaps += (i + 1..self.generators.len())
                    .filter(|&k| self.generators[k].degree % 2 == 1 && x[k] == 1)
                    .count();
            }
        }
        Some((if swaps % 2 == 0 { 1 } else { -1 }, exps))
    }

    /// `Sq^2` of a basis monomial mod 2. Only degree-2 generators contribute
    /// (`Sq^2 x = x^2`); all other generators are assumed to have `Sq^2 = 0`
    /// and everything has `Sq^1 = 0` since the ring is torsion-free.
    fn sq2(&self, x: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree == 2 && x[i] % 2 == 1 && x[i] < g.max_power {
                let mut e = x.to_vec();
                e[i] += 1;
                out.push(e);
            }
        }
        out
    }

    /// Coordinates of the monomial with the given exponents in its degree.
    pub fn coords(&self, degree: usize, terms: &[(i64, &[usize])]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rank(degree)];
        for &(k, exps) in terms {
            let (d, i) = self.index(exps).expect("monomial in basis");
            assert_eq!(d, degree);
            v[i] += k;
        }
        v
    }

    /// Full manifold data with every cup table, `rho2`, `beta` (zero), and `Sq^2`.
    pub fn manifold(&self, name: &str) -> ManifoldData {
        let mut data = ManifoldData::empty(name);
        for n in 0..=TOP_DEGREE {
            data.integral[n] = FGAbelianGroup::free(self.rank(n));
            data.mod2[n] = self.rank(n);
        }
        for a in 1..=TOP_DEGREE {
            for b in 1..=TOP_DEGREE - a {
                let (ra, rb, rt) = (self.rank(a), self.rank(b), self.rank(a + b));
                if ra == 0 || rb == 0 || rt == 0 {
                    continue;
                }
                let mut table = ProductTable::zeros(ra, rb, rt);
                for (i, x) in self.basis[a].iter().enumerate() {
                    for (j, y) in self.basis[b].iter().enumerate() {
                        if let Some((sign, e)) = self.multiply(x, y) {
                            let (_, k) = self.index(&e).expect("product in range");
                            table.entries[i][j][k] = BigInt::from(sign);
                        }
                    }
                }
                if a == 2 && b == 2 {
                    let bits = ProductTable {
                        entries: table
                            .entries
                            .iter()
                            .map(|row| {
                                row.iter()
                                    .map(|e| e.iter().map(|c| c.abs_mod2()).collect())
                                    .collect()
                            })
                            .collect(),
                    };
                    data.cup_mod2.insert((2, 2), bits);
                }
                data.cup.insert((a, b), table);
            }
        }
        for n in 0..=TOP_DEGREE {
            let r = self.rank(n);
            if r > 0 {
                data.rho2.insert(n, BitMatrix::identity(r));
            }
            if n < TOP_DEGREE && r > 0 && self.rank(n + 1) > 0 {
                data.beta.insert(n, IntMatrix::zeros(self.rank(n + 1), r));
            }
            if n + 2 <= TOP_DEGREE && r > 0 && self.rank(n + 2) > 0 {
                let mut m = BitMatrix::zeros(self.rank(n + 2), r);
                for (j, x) in self.basis[n].iter().enumerate() {
                    for e in self.sq2(x) {
                        let (_, i) = self.index(&e).expect("Sq2 image in basis");
                        m.set(i, j, !m.get(i, j));
                    }
                }
                data.sq2.insert(n, m);
            }
        }
        data
    }
}

trait AbsMod2 {
    fn abs_mod2(&self) -> BigInt;
}

impl AbsMod2 for BigInt {
    fn abs_mod2(&self) -> BigInt {
        BigInt::from(u8::from(self.bit(0)))
    }
}

fn class(
    data: &ManifoldData,
    degree: usize,
    coords: Vec<BigInt>,
) -> crate::cohomology::CohomologyClass {
    data.integral_class(degree, coords).expect("fixture class")
}

fn mod2(
    data: &ManifoldData,
    degree: usize,
    coords: Vec<BigInt>,
) -> crate::cohomology::CohomologyClass {
    data.mod2_class(degree, coords).expect("fixture class")
}

fn gen(degree: usize, max_power: usize) -> RingGenerator {
    RingGenerator { degree, max_power }
}

/// `H^*(CP^4) = Z[t]/(t^5)`, `p1 = 5t^2`, `c = c1 = 5t`.
fn cp4() -> ManifoldData {
    let ring = MonomialRing::new(&[gen(2, 4)]);
    let mut d = ring.manifold("cp4");
    d.p1 = class(&d, 4, ring.coords(4, &[(5, &[2])]));
    d.spinc = class(&d, 2, ring.coords(2, &[(5, &[1])]));
    d.w2 = Some(mod2(&d, 2, ring.coords(2, &[(1, &[1])])));
    d.odd_generators = Some(Vec::new());
    d
}

fn s8() -> ManifoldData {
    let ring = MonomialRing::new(&[gen(8, 1)]);
    let mut d = ring.manifold("s8");
    d.p1 = class(&d, 4, vec![]);
    d.spinc = class(&d, 2, vec![]);
    d.w2 = Some(mod2(&d, 2, vec![]));
    d.odd_generators = Some(Vec::new());
    d
}

/// `H^*(HP^2) = Z[u]/(u^3)`, `|u| = 4`, `p1 = 2u`, spin.
fn hp2() -> ManifoldData {
    let ring = MonomialRing::new(&[gen(4, 2)]);
    let mut d = ring.manifold("hp2");
    d.p1 = class(&d, 4, ring.coords(4, &[(2, &[1])]));
    d.spinc = class(&d, 2, vec![]);
    d.w2 = Some(mod2(&d, 2, vec![]));
    d.odd_generators = Some(Vec::new());
    d
}

/// `p1 = 3a^2 + 3b^2`, `c = 3a + 3b`.
fn cp2xcp2() -> ManifoldData {
    let ring = MonomialRing::new(&[gen(2, 2), gen(2, 2)]);
    let mut d = ring.manifold("cp2xcp2");
    d.p1 = class(&d, 4, ring.coords(4, &[(3, &[2, 0]), (3, &[0, 2])]));
    d.spinc = class(&d, 2, ring.coords(2, &[(3, &[1, 0]), (3, &[0, 1])]));
    d.w2 = Some(mod2(&d, 2, ring.coords(2, &[(1, &[1, 0]), (1, &[0, 1])])));
    d.odd_generators = Some(Vec::new());
    d
}

/// `p1 = 4b^2`, `c = 2a + 4b`, spin.
fn cp1xcp3() -> ManifoldData {
    let ring = MonomialRing::new(&[gen(2, 1), gen(2, 3)]);
    let mut d = ring.manifold("cp1xcp3");
    d.p1 = class(&d, 4, ring.coords(4, &[(4, &[0, 2])]));
    d.spinc = class(&d, 2, ring.coords(2, &[(2, &[1, 0]), (4, &[0, 1])]));
    d.w2 = Some(mod2(&d, 2, ring.coords(2, &[])));
    d.odd_generators = Some(Vec::new());
    d
}

/// `HP^2` cohomology with an extra `Z/2` in `H^6` hit by the Bockstein of a
/// class in `H^5(Z/2)`; `Sq^2 rho2 H^3 = 0`, so the group B is `Z/2`.
fn torsion_demo() -> ManifoldData {
    let ring = MonomialRing::new(&[gen(4, 2)]);
    let mut d = ring.manifold("torsion-demo");
    d.integral[6] = FGAbelianGroup::cyclic(2);
    d.mod2[5] = 1;
    d.mod2[6] = 1;
    d.rho2.insert(6, BitMatrix::identity(1));
    d.beta = BTreeMap::new();
    d.beta.insert(5, IntMatrix::from_rows(&[vec![1]]));
    d.sq2.insert(4, BitMatrix::zeros(1, 1));
    d.p1 = class(&d, 4, ring.coords(4, &[(2, &[1])]));
    d.spinc = class(&d, 2, vec![]);
    d.w2 = Some(mod2(&d, 2, vec![]));
    d.odd_generators = Some(Vec::new());
    d
}

/// `S^1 x S^7` cohomology with a single synthetic odd generator
/// `(0, 0, 0, 2 g7)`, so that T = `Z/2`.
fn odd_demo() -> ManifoldData {
    let ring = MonomialRing::new(&[gen(1, 1), gen(7, 1)]);
    let mut d = ring.manifold("odd-demo");
    d.p1 = class(&d, 4, vec![]);
    d.spinc = class(&d, 2, vec![]);
    d.w2 = Some(mod2(&d, 2, vec![]));
    let z = |n| {
        d.zero_class(n, Coefficients::Integers)
            .expect("degree in range")
    };
    let g7 = class(&d, 7, vec![BigInt::from(2)]);
    d.odd_generators = Some(vec![OddGenerator {
        g1: z(1),
        g3: z(3),
        g5: z(5),
        g7,
    }]);
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Signed};

    #[test]
    fn every_builtin_validates_strictly() {
        for name in BUILTIN_NAMES {
            let d = builtin(name).unwrap();
            let report = d.validate(true);
            assert!(report.is_ok(), "{name}:\n{report}");
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(builtin("rp8"), Err(Error::UnknownBuiltin(..))));
    }

    #[test]
    fn cp4_characteristic_classes() {
        let d = builtin("cp4").unwrap();
        assert_eq!(d.p1.coords(), &[BigInt::from(5)]);
        assert_eq!(d.spinc.coords(), &[BigInt::from(5)]);
        let t = d.generator(2, 0).unwrap();
        let t2 = d.cup(&t, &t).unwrap();
        assert_eq!(t2, d.generator(4, 0).unwrap());
        // Sq2(t^k) = k t^(k+1)
        let t2_mod = d.rho2(&t2).unwrap();
        assert!(d.sq2(&t2_mod).unwrap().is_zero());
        let t3_mod = d.rho2(&d.generator(6, 0).unwrap()).unwrap();
        assert_eq!(
            d.sq2(&t3_mod).unwrap(),
            d.rho2(&d.generator(8, 0).unwrap()).unwrap()
        );
    }

    #[test]
    fn s8_groups() {
        let d = builtin("s8").unwrap();
        for n in [2, 4, 6] {
            assert!(d.integral[n].is_trivial());
        }
        assert_eq!(d.integral[8], FGAbelianGroup::free(1));
    }

    #[test]
    fn exterior_signs() {
        // S^1 x S^3 x CP^2: e1 e3 = -e3 e1
        let ring = MonomialRing::new(&[gen(1, 1), gen(3, 1), gen(2, 2)]);
        let d = ring.manifold("s1xs3xcp2");
        let e1 = d.generator(1, 0).unwrap();
        let e3 = d
            .integral_class(3, ring.coords(3, &[(1, &[0, 1, 0])]))
            .unwrap();
        let a = d.cup(&e1, &e3).unwrap();
        let b = d.cup(&e3, &e1).unwrap();
        assert_eq!(
            d.add(&a, &b).unwrap(),
            d.zero_class(4, Coefficients::Integers).unwrap()
        );
        assert!(!a.is_zero());
        let top = d
            .cup_all(&[
                &e1,
                &e3,
                &d.cup(&d.generator(2, 0).unwrap(), &d.generator(2, 0).unwrap())
                    .unwrap(),
            ])
            .unwrap();
        assert!(d.pair_top(&top).unwrap().abs().is_one());
    }
}
