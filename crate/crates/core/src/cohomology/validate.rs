use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Coefficients, ManifoldData, OpMatrix, Operation, TOP_DEGREE};
use crate::abelian::{subgroup_quotient, BitMatrix, FGAbelianGroup, GroupElement, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    Shape,
    H0IsZ,
    H8IsZ,
    PairingUnimodular,
    Rho2TimesTwo,
    BetaAfterRho2,
    BetaTwoTorsion,
    CupWellDefined,
    GradedCommutativity,
    SpincLift,
    Sq2IsSquare,
    ExactImRho2KerBeta,
    ExactImBetaKerTimesTwo,
    ExactKerRho2,
}

impl Law {
    pub fn description(self) -> &'static str {
        match self {
            Law::Shape => "shape compatibility",
            Law::H0IsZ => "H^0 = Z",
            Law::H8IsZ => "H^8 = Z",
            Law::PairingUnimodular => "pairing surjective onto Z",
            Law::Rho2TimesTwo => "rho2 o (x2) = 0",
            Law::BetaAfterRho2 => "beta o rho2 = 0",
            Law::BetaTwoTorsion => "2 beta = 0",
            Law::CupWellDefined => "cup tables respect generator orders",
            Law::GradedCommutativity => "graded commutativity",
            Law::SpincLift => "rho2(c) = w2",
            Law::Sq2IsSquare => "Sq2(x) = x^2 on H^2(Z/2)",
            Law::ExactImRho2KerBeta => "exactness: im rho2 = ker beta",
            Law::ExactImBetaKerTimesTwo => "exactness: im beta = ker(x2)",
            Law::ExactKerRho2 => "exactness: ker rho2 = im(x2)",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// Carries a witness describing the offending generator.
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub law: Law,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub strict: bool,
    pub checks: Vec<LawCheck>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn outcome(&self, law: Law) -> Option<&Outcome> {
        self.checks
            .iter()
            .find(|c| c.law == law)
            .map(|c| &c.outcome)
    }

    pub fn failed(&self, law: Law) -> bool {
        matches!(self.outcome(law), Some(Outcome::Fail(_)))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            let (tag, detail) = match &check.outcome {
                Outcome::Pass => ("PASS", String::new()),
                Outcome::Fail(w) => ("FAIL", format!("  ({w})")),
                Outcome::Skipped(w) => ("SKIP", format!("  ({w})")),
            };
            let line = format!("{tag:<5}{:<40}{detail}", check.law.description());
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

type Check = Result<(), String>;
type LawFn = fn(&ManifoldData) -> Outcome;

pub(super) fn validate_manifold(data: &ManifoldData, strict: bool) -> ValidationReport {
    let mut checks = Vec::new();
    let shape = check_shape(data);
    let shape_ok = shape.is_ok();
    checks.push(LawCheck {
        law: Law::Shape,
        outcome: to_outcome(shape),
    });

    let laws: Vec<(Law, LawFn)> = vec![
        (Law::H0IsZ, |d| to_outcome(check_h0(d))),
        (Law::H8IsZ, |d| to_outcome(check_h8(d))),
        (Law::PairingUnimodular, |d| to_outcome(check_pairing(d))),
        (Law::Rho2TimesTwo, |d| to_outcome(check_rho2_relations(d))),
        (Law::BetaAfterRho2, |d| to_outcome(check_beta_rho2(d))),
        (Law::BetaTwoTorsion, |d| to_outcome(check_beta_torsion(d))),
        (Law::CupWellDefined, |d| to_outcome(check_cup_relations(d))),
        (Law::GradedCommutativity, |d| {
            to_outcome(check_commutativity(d))
        }),
        (Law::SpincLift, check_spinc),
        (Law::Sq2IsSquare, check_sq2_square),
    ];
    let mut strict_laws: Vec<(Law, LawFn)> = vec![
        (Law::ExactImRho2KerBeta, |d| to_outcome(check_exact_mod2(d))),
        (Law::ExactImBetaKerTimesTwo, |d| {
            to_outcome(check_exact_integral(d))
        }),
        (Law::ExactKerRho2, |d| to_outcome(check_exact_reduction(d))),
    ];
    let mut all = laws;
    if strict {
        all.append(&mut strict_laws);
    }
    for (law, f) in all {
        let outcome = if shape_ok {
            f(data)
        } else {
            Outcome::Skipped("shape check failed".into())
        };
        checks.push(LawCheck { law, outcome });
    }
    ValidationReport { strict, checks }
}

fn to_outcome(r: Check) -> Outcome {
    match r {
        Ok(()) => Outcome::Pass,
        Err(w) => Outcome::Fail(w),
    }
}

fn expect_len(what: &str, expected: usize, found: usize) -> Check {
    if expected == found {
        Ok(())
    } else {
        Err(format!(
            "{what}: expected {expected} entries, found {found}"
        ))
    }
}

fn check_shape(d: &ManifoldData) -> Check {
    expect_len("integral groups", TOP_DEGREE + 1, d.integral.len())?;
    expect_len("mod-2 dimensions", TOP_DEGREE + 1, d.mod2.len())?;
    for (ring, tables) in [
        (Coefficients::Integers, &d.cup),
        (Coefficients::Mod2, &d.cup_mod2),
    ] {
        for (&(a, b), table) in tables {
            if a + b > TOP_DEGREE {
                return Err(format!("cup table ({a}, {b}) exceeds degree {TOP_DEGREE}"));
            }
            let ctx = format!("cup table ({a}, {b}) over {ring}");
            expect_len(&ctx, d.dim(a, ring), table.entries.len())?;
            for row in &table.entries {
                expect_len(&ctx, d.dim(b, ring), row.len())?;
                for e in row {
                    expect_len(&ctx, d.dim(a + b, ring), e.len())?;
                }
            }
        }
    }
    let keys = d
        .rho2
        .keys()
        .map(|&k| (Operation::Rho2, k))
        .chain(d.beta.keys().map(|&k| (Operation::Beta, k)))
        .chain(d.sq2.keys().map(|&k| (Operation::Sq2, k)));
    for (op, degree) in keys {
        d.op_matrix(op, degree).map_err(|e| e.to_string())?;
    }
    expect_len("pairing vector", d.ngens(TOP_DEGREE), d.pairing.len())?;
    let mut classes = vec![
        ("p1", &d.p1, 4, Coefficients::Integers),
        ("spinc", &d.spinc, 2, Coefficients::Integers),
    ];
    if let Some(w2) = &d.w2 {
        classes.push(("w2", w2, 2, Coefficients::Mod2));
    }
    if let Some(gens) = &d.odd_generators {
        for g in gens {
            for (k, c) in g.classes().into_iter().enumerate() {
                classes.push(("odd generator", c, 2 * k + 1, Coefficients::Integers));
            }
        }
    }
    for (name, c, degree, ring) in classes {
        if c.degree() != degree || c.coefficients() != ring {
            return Err(format!("{name} must lie in H^{degree}(M;{ring})"));
        }
        expect_len(name, d.dim(degree, ring), c.coords().len())?;
    }
    Ok(())
}

fn check_h0(d: &ManifoldData) -> Check {
    if d.integral[0] != FGAbelianGroup::free(1) {
        return Err(format!("H^0 = {}", d.integral[0]));
    }
    if d.mod2[0] != 1 {
        return Err(format!("dim H^0(M;Z/2) = {}", d.mod2[0]));
    }
    Ok(())
}

fn check_h8(d: &ManifoldData) -> Check {
    if d.integral[TOP_DEGREE] != FGAbelianGroup::free(1) {
        return Err(format!("H^8 = {}", d.integral[TOP_DEGREE]));
    }
    Ok(())
}

fn check_pairing(d: &ManifoldData) -> Check {
    match d.pairing.as_slice() {
        [v] if v.abs().is_one() => Ok(()),
        [v] => Err(format!("<g_0, [M]> = {v}, expected +1 or -1")),
        other => Err(format!("pairing has {} entries", other.len())),
    }
}

fn bit_matrix(d: &ManifoldData, op: Operation, degree: usize) -> Option<BitMatrix> {
    match d.op_matrix(op, degree).ok()? {
        OpMatrix::Bits(m) => Some(m.into_owned()),
        OpMatrix::Ints(_) => None,
    }
}

fn int_matrix(d: &ManifoldData, degree: usize) -> Option<IntMatrix> {
    match d.op_matrix(Operation::Beta, degree).ok()? {
        OpMatrix::Ints(m) => Some(m.into_owned()),
        OpMatrix::Bits(_) => None,
    }
}

fn reduced_is_zero(group: &FGAbelianGroup, v: Vec<BigInt>) -> bool {
    let mut v = v;
    group.reduce(&mut v);
    v.iter().all(Zero::is_zero)
}

fn check_rho2_relations(d: &ManifoldData) -> Check {
    for n in 0..=TOP_DEGREE {
        let Some(m) = bit_matrix(d, Operation::Rho2, n) else {
            continue;
        };
        for (j, order) in d.integral[n].invariant_factors().iter().enumerate() {
            if !order.is_zero() && order.is_odd() && m.column(j).iter().any(|&b| b) {
                return Err(format!(
                    "rho2 of generator {j} of H^{n} (order {order}) is nonzero"
                ));
            }
        }
    }
    Ok(())
}

fn check_beta_rho2(d: &ManifoldData) -> Check {
    for n in 0..TOP_DEGREE {
        let (Some(r), Some(b)) = (bit_matrix(d, Operation::Rho2, n), int_matrix(d, n)) else {
            continue;
        };
        for j in 0..d.ngens(n) {
            let bits: Vec<BigInt> = r.column(j).into_iter().map(BigInt::from).collect();
            if !reduced_is_zero(&d.integral[n + 1], b.mul_vec(&bits)) {
                return Err(format!("beta(rho2(g_{j})) != 0 for generator {j} of H^{n}"));
            }
        }
    }
    Ok(())
}

fn check_beta_torsion(d: &ManifoldData) -> Check {
    for n in 0..TOP_DEGREE {
        let Some(b) = int_matrix(d, n) else { continue };
        for j in 0..b.cols() {
            let twice: Vec<BigInt> = b.column(j).into_iter().map(|x| x * 2).collect();
            if !reduced_is_zero(&d.integral[n + 1], twice) {
                return Err(format!(
                    "beta(x_{j}) for basis element {j} of H^{n}(M;Z/2) is not 2-torsion"
                ));
            }
        }
    }
    Ok(())
}

fn check_cup_relations(d: &ManifoldData) -> Check {
    for (&(a, b), table) in &d.cup {
        let target = &d.integral[a + b];
        for (i, row) in table.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let orders = [
                    d.integral[a].invariant_factors()[i].clone(),
                    d.integral[b].invariant_factors()[j].clone(),
                ];
                for k in orders.iter().filter(|k| !k.is_zero()) {
                    let v: Vec<BigInt> = e.iter().map(|x| x * k).collect();
                    if !reduced_is_zero(target, v) {
                        return Err(format!(
                            "cup ({a}, {b}) entry ({i}, {j}) is not killed by {k}"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_commutativity(d: &ManifoldData) -> Check {
    for (&(a, b), table) in &d.cup {
        if a >= b {
            continue;
        }
        let Some(other) = d.cup.get(&(b, a)) else {
            continue;
        };
        let sign = if (a * b) % 2 == 1 {
            BigInt::from(-1)
        } else {
            BigInt::one()
        };
        for i in 0..d.ngens(a) {
            for j in 0..d.ngens(b) {
                let lhs = &table.entries[i][j];
                let diff: Vec<BigInt> = lhs
                    .iter()
                    .zip(&other.entries[j][i])
                    .map(|(x, y)| x - &sign * y)
                    .collect();
                if !reduced_is_zero(&d.integral[a + b], diff) {
                    return Err(format!(
                        "cup ({a}, {b}) and ({b}, {a}) disagree at ({i}, {j})"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn check_spinc(d: &ManifoldData) -> Outcome {
    let Some(w2) = &d.w2 else {
        return Outcome::Skipped("w2 not supplied; rho2(c) is taken as w2".into());
    };
    match d.rho2(&d.spinc) {
        Ok(r) if &r == w2 => Outcome::Pass,
        Ok(r) => Outcome::Fail(format!("rho2(c) = {r} but w2 = {w2}")),
        Err(e) => Outcome::Fail(e.to_string()),
    }
}

fn check_sq2_square(d: &ManifoldData) -> Outcome {
    if !d.sq2.contains_key(&2) || !d.cup_mod2.contains_key(&(2, 2)) {
        return Outcome::Skipped("needs sq2 in degree 2 and a mod-2 (2, 2) table".into());
    }
    for j in 0..d.mod2_dim(2) {
        let result = d.mod2_basis(2, j).and_then(|x| {
            let sq = d.sq2(&x)?;
            let square = d.cup(&x, &x)?;
            Ok((sq, square))
        });
        match result {
            Ok((sq, square)) if sq == square => {}
            Ok(_) => return Outcome::Fail(format!("Sq2(x_{j}) != x_{j}^2 in H^4(M;Z/2)")),
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    }
    Outcome::Pass
}

/// `log2 |im beta|` for `beta: H^n(Z/2) -> H^(n+1)(Z)`.
fn beta_image_rank(d: &ManifoldData, n: usize, b: &IntMatrix) -> Result<usize, String> {
    if n + 1 > TOP_DEGREE {
        return Ok(0);
    }
    let target = &d.integral[n + 1];
    let gens: Vec<GroupElement> = (0..b.cols())
        .map(|j| GroupElement::new(target, b.column(j)).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let image = subgroup_quotient(target, &gens, &[]).map_err(|e| e.to_string())?;
    let order = image
        .order()
        .ok_or_else(|| format!("beta image in H^{} is infinite", n + 1))?;
    let mut k = 0;
    let mut o = order;
    let two = BigInt::from(2);
    while o > BigInt::one() {
        if !o.is_multiple_of(&two) {
            return Err(format!("beta image in H^{} has odd order part", n + 1));
        }
        o /= &two;
        k += 1;
    }
    Ok(k)
}

fn beta_or_zero(d: &ManifoldData, n: usize) -> Option<IntMatrix> {
    if n >= TOP_DEGREE {
        return Some(IntMatrix::zeros(0, d.mod2_dim(n)));
    }
    int_matrix(d, n)
}

fn check_exact_mod2(d: &ManifoldData) -> Check {
    for n in 0..=TOP_DEGREE {
        let (Some(r), Some(b)) = (bit_matrix(d, Operation::Rho2, n), beta_or_zero(d, n)) else {
            continue;
        };
        let im_rho2 = r.rank();
        let ker_beta = d.mod2_dim(n) - beta_image_rank(d, n, &b)?;
        if im_rho2 != ker_beta {
            return Err(format!(
                "degree {n}: dim im rho2 = {im_rho2} but dim ker beta = {ker_beta}"
            ));
        }
    }
    Ok(())
}

fn check_exact_integral(d: &ManifoldData) -> Check {
    for n in 0..TOP_DEGREE {
        let Some(b) = int_matrix(d, n) else { continue };
        let two_torsion = d.integral[n + 1]
            .torsion_factors()
            .iter()
            .filter(|f| f.is_even())
            .count();
        let im = beta_image_rank(d, n, &b)?;
        if im != two_torsion {
            return Err(format!(
                "degree {}: |im beta| = 2^{im} but the 2-torsion of H^{} has order 2^{two_torsion}",
                n + 1,
                n + 1
            ));
        }
    }
    Ok(())
}

fn check_exact_reduction(d: &ManifoldData) -> Check {
    for n in 0..=TOP_DEGREE {
        let Some(r) = bit_matrix(d, Operation::Rho2, n) else {
            continue;
        };
        let expected = d.integral[n]
            .invariant_factors()
            .iter()
            .filter(|f| f.is_zero() || f.is_even())
            .count();
        let rank = r.rank();
        if rank != expected {
            return Err(format!(
                "degree {n}: rho2 has rank {rank} but H^{n}/2 has dimension {expected}"
            ));
        }
    }
    Ok(())
}
