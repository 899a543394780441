//! Characteristic-class algebra truncated at degree 8.
//!
//! [`rr_value`] evaluates the expanded Riemann–Roch pairing
//! `<A(M) e^(c/2) (ch(E) - ch(det E) - rank E + 1), [M]>` as a fixed
//! polynomial in `u1..u4`, `p1` and `c`. [`rr_value_series`] recomputes the
//! same number by multiplying the truncated power series directly in
//! `H^even(M; Q)`, which keeps the expansion honest.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cohomology::{ChernTuple, CohomologyClass, ManifoldData, TOP_DEGREE};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    U1,
    U2,
    U3,
    U4,
    P1,
    C,
}

impl Symbol {
    pub fn degree(self) -> usize {
        match self {
            Symbol::U1 | Symbol::C => 2,
            Symbol::U2 | Symbol::P1 => 4,
            Symbol::U3 => 6,
            Symbol::U4 => 8,
        }
    }

    fn resolve<'a>(self, data: &'a ManifoldData, u: &'a ChernTuple) -> &'a CohomologyClass {
        match self {
            Symbol::U1 => &u.u1,
            Symbol::U2 => &u.u2,
            Symbol::U3 => &u.u3,
            Symbol::U4 => &u.u4,
            Symbol::P1 => &data.p1,
            Symbol::C => &data.spinc,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::U1 => "u1",
            Symbol::U2 => "u2",
            Symbol::U3 => "u3",
            Symbol::U4 => "u4",
            Symbol::P1 => "p1",
            Symbol::C => "c",
        })
    }
}

/// A degree-8 expression `sum q_k m_k` whose value is `sum q_k <m_k, [M]>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPolynomial {
    terms: Vec<(BigRational, Vec<Symbol>)>,
}

impl ClassPolynomial {
    /// Panics if a monomial is not of total degree 8.
    pub fn new(terms: Vec<(BigRational, Vec<Symbol>)>) -> Self {
        for (_, m) in &terms {
            let deg: usize = m.iter().map(|s| s.degree()).sum();
            assert_eq!(deg, TOP_DEGREE, "monomial {m:?} has degree {deg}");
        }
        ClassPolynomial { terms }
    }

    /// Terms given as `(numerator, denominator, monomial)`.
    pub fn from_terms(terms: &[(i64, i64, &[Symbol])]) -> Self {
        Self::new(
            terms
                .iter()
                .map(|&(n, d, m)| (BigRational::new(n.into(), d.into()), m.to_vec()))
                .collect(),
        )
    }

    pub fn terms(&self) -> &[(BigRational, Vec<Symbol>)] {
        &self.terms
    }

    pub fn evaluate(&self, data: &ManifoldData, u: &ChernTuple) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (q, monomial) in &self.terms {
            let factors: Vec<&CohomologyClass> =
                monomial.iter().map(|s| s.resolve(data, u)).collect();
            let class = data.cup_all(&factors)?;
            total += q * BigRational::from_integer(data.pair_top(&class)?);
        }
        Ok(total)
    }
}

impl fmt::Display for ClassPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (q, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let names: Vec<String> = m.iter().map(ToString::to_string).collect();
            write!(f, "({q}) {}", names.join(" "))?;
        }
        Ok(())
    }
}

/// `(1/6)<-u1^2 u2 + u1 u3 - u4> + (1/4)<c(u3 - u1 u2)> + (1/24)<2 u2^2 - (3c^2 - p1) u2>`.
pub fn rr_polynomial() -> ClassPolynomial {
    use Symbol::*;
    ClassPolynomial::from_terms(&[
        (-1, 6, &[U1, U1, U2]),
        (1, 6, &[U1, U3]),
        (-1, 6, &[U4]),
        (1, 4, &[C, U3]),
        (-1, 4, &[C, U1, U2]),
        (2, 24, &[U2, U2]),
        (-3, 24, &[C, C, U2]),
        (1, 24, &[P1, U2]),
    ])
}

pub fn rr_value(data: &ManifoldData, u: &ChernTuple) -> Result<BigRational> {
    rr_polynomial().evaluate(data, u)
}

/// An element of `H^even(M; Q)` stored by its coordinates on the free
/// generators of each even degree (torsion is invisible rationally).
#[derive(Clone, Debug)]
struct RationalForm {
    parts: Vec<Vec<BigRational>>,
}

/// Rational multiplication data: free generator indices and their products.
struct RationalRing<'a> {
    data: &'a ManifoldData,
    free: Vec<Vec<usize>>,
}

impl<'a> RationalRing<'a> {
    fn new(data: &'a ManifoldData) -> Self {
        let free = (0..=TOP_DEGREE / 2)
            .map(|k| {
                data.integral[2 * k]
                    .invariant_factors()
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| d.is_zero())
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        RationalRing { data, free }
    }

    fn zero(&self) -> RationalForm {
        RationalForm {
            parts: self
                .free
                .iter()
                .map(|f| vec![BigRational::zero(); f.len()])
                .collect(),
        }
    }

    fn one(&self) -> RationalForm {
        let mut r = self.zero();
        r.parts[0][0] = BigRational::one();
        r
    }

    fn lift(&self, x: &CohomologyClass) -> RationalForm {
        let mut r = self.zero();
        let k = x.degree() / 2;
        for (slot, &j) in r.parts[k].iter_mut().zip(&self.free[k]) {
            *slot = BigRational::from_integer(x.coords()[j].clone());
        }
        r
    }

    fn add(&self, x: &RationalForm, y: &RationalForm) -> RationalForm {
        RationalForm {
            parts: x
                .parts
                .iter()
                .zip(&y.parts)
                .map(|(a, b)| a.iter().zip(b).map(|(p, q)| p + q).collect())
                .collect(),
        }
    }

    fn scale(&self, q: &BigRational, x: &RationalForm) -> RationalForm {
        RationalForm {
            parts: x
                .parts
                .iter()
                .map(|a| a.iter().map(|p| p * q).collect())
                .collect(),
        }
    }

    fn mul(&self, x: &RationalForm, y: &RationalForm) -> Result<RationalForm> {
        let mut out = self.zero();
        for (ka, xa) in x.parts.iter().enumerate() {
            for (kb, yb) in y.parts.iter().enumerate() {
                if ka + kb > TOP_DEGREE / 2 {
                    continue;
                }
                for (ia, p) in xa.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    for (ib, q) in yb.iter().enumerate() {
                        if q.is_zero() {
                            continue;
                        }
                        let g = self.data.generator(2 * ka, self.free[ka][ia])?;
                        let h = self.data.generator(2 * kb, self.free[kb][ib])?;
                        let prod = self.lift(&self.data.cup(&g, &h)?);
                        let pq = p * q;
                        for (o, v) in out.parts[ka + kb].iter_mut().zip(&prod.parts[ka + kb]) {
                            *o += &pq * v;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn pair(&self, x: &RationalForm) -> BigRational {
        let top = TOP_DEGREE / 2;
        x.parts[top]
            .iter()
            .zip(&self.free[top])
            .map(|(q, &j)| q * BigRational::from_integer(self.data.pairing[j].clone()))
            .sum()
    }

    /// `sum_{k<=4} x^k / k!`
    fn exp(&self, x: &RationalForm) -> Result<RationalForm> {
        let mut total = self.one();
        let mut power = self.one();
        let mut factorial = BigInt::one();
        for k in 1..=TOP_DEGREE / 2 {
            power = self.mul(&power, x)?;
            factorial *= k;
            total = self.add(
                &total,
                &self.scale(&BigRational::new(BigInt::one(), factorial.clone()), &power),
            );
        }
        Ok(total)
    }
}

/// The Riemann–Roch value by direct truncated series multiplication.
///
/// The `p2` term of the A-hat genus multiplies the degree-0 part of the
/// bracket, which vanishes identically; that is checked rather than assumed.
pub fn rr_value_series(data: &ManifoldData, u: &ChernTuple) -> Result<BigRational> {
    let ring = RationalRing::new(data);
    let c: Vec<RationalForm> = [&u.u1, &u.u2, &u.u3, &u.u4]
        .iter()
        .map(|x| ring.lift(x))
        .collect();
    let rank = BigRational::from_integer(BigInt::from(4));

    // Newton: s_k = sum_{i<k} (-1)^(i-1) c_i s_(k-i) + (-1)^(k-1) k c_k
    let mut power_sums: Vec<RationalForm> = Vec::new();
    for k in 1..=4usize {
        let sign = |e: usize| {
            if e.is_multiple_of(2) {
                BigRational::one()
            } else {
                -BigRational::one()
            }
        };
        let mut s = ring.scale(
            &(sign(k - 1) * BigRational::from_integer(k.into())),
            &c[k - 1],
        );
        for i in 1..k {
            let term = ring.mul(&c[i - 1], &power_sums[k - i - 1])?;
            s = ring.add(&s, &ring.scale(&sign(i - 1), &term));
        }
        power_sums.push(s);
    }
    let mut ch = ring.scale(&rank, &ring.one());
    let mut factorial = BigInt::one();
    for (k, s) in power_sums.iter().enumerate() {
        factorial *= k + 1;
        ch = ring.add(
            &ch,
            &ring.scale(&BigRational::new(BigInt::one(), factorial.clone()), s),
        );
    }

    let ch_det = ring.exp(&c[0])?;
    let minus_one = -BigRational::one();
    let mut bracket = ring.add(&ch, &ring.scale(&minus_one, &ch_det));
    bracket = ring.add(
        &bracket,
        &ring.scale(&(BigRational::one() - &rank), &ring.one()),
    );
    if !bracket.parts[0].iter().all(Zero::is_zero) {
        return Err(Error::InternalInconsistency(
            "degree-0 part of the index bracket is nonzero".into(),
        ));
    }

    let p1 = ring.lift(&data.p1);
    let a_hat = ring.add(
        &ring.one(),
        &ring.scale(&BigRational::new((-1).into(), 24.into()), &p1),
    );
    let half_c = ring.scale(
        &BigRational::new(1.into(), 2.into()),
        &ring.lift(&data.spinc),
    );
    let twist = ring.exp(&half_c)?;
    let integrand = ring.mul(&ring.mul(&a_hat, &twist)?, &bracket)?;
    Ok(ring.pair(&integrand))
}

/// Truncated product of total Chern classes `(1 + u1 + ... + u4)(1 + v1 + ... + v4)`.
pub fn chern_product(u: &ChernTuple, v: &ChernTuple, data: &ManifoldData) -> Result<ChernTuple> {
    let sum = |xs: &[CohomologyClass]| -> Result<CohomologyClass> {
        let mut acc = xs[0].clone();
        for x in &xs[1..] {
            acc = data.add(&acc, x)?;
        }
        Ok(acc)
    };
    let w1 = data.add(&u.u1, &v.u1)?;
    let w2 = sum(&[u.u2.clone(), v.u2.clone(), data.cup(&u.u1, &v.u1)?])?;
    let w3 = sum(&[
        u.u3.clone(),
        v.u3.clone(),
        data.cup(&u.u1, &v.u2)?,
        data.cup(&u.u2, &v.u1)?,
    ])?;
    let w4 = sum(&[
        u.u4.clone(),
        v.u4.clone(),
        data.cup(&u.u1, &v.u3)?,
        data.cup(&u.u2, &v.u2)?,
        data.cup(&u.u3, &v.u1)?,
    ])?;
    ChernTuple::new(w1, w2, w3, w4)
}

/// The unique `v` with `chern_product(u, v)` equal to the zero tuple.
pub fn chern_inverse(u: &ChernTuple, data: &ManifoldData) -> Result<ChernTuple> {
    let neg = BigInt::from(-1);
    let v1 = data.scale(&neg, &u.u1);
    let v2 = data.scale(&neg, &data.add(&u.u2, &data.cup(&u.u1, &v1)?)?);
    let s3 = data.add(
        &data.add(&u.u3, &data.cup(&u.u1, &v2)?)?,
        &data.cup(&u.u2, &v1)?,
    )?;
    let v3 = data.scale(&neg, &s3);
    let s4 = data.add(
        &data.add(
            &data.add(&u.u4, &data.cup(&u.u1, &v3)?)?,
            &data.cup(&u.u2, &v2)?,
        )?,
        &data.cup(&u.u3, &v1)?,
    )?;
    let v4 = data.scale(&neg, &s4);
    ChernTuple::new(v1, v2, v3, v4)
}
