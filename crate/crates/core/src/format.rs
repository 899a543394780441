//! Line-oriented text format for [`ManifoldData`].
//!
//! ```text
//! # comment
//! name cp4
//! degree 2: free 1
//! degree 6: free 0, torsion 2
//! mod2 2: 1
//! matrix rho2 2 1x1
//! 1
//! cup 2 2 0 0 -> 1
//! cup2 2 2 0 0 -> 1
//! pairing 1
//! p1 5
//! spinc 5
//! w2 1
//! oddgen - ; - ; - ; 2
//! ```
//!
//! Vectors are comma-separated integers, `-` is the empty vector.
//! `docs/manifold-format.md` has the full grammar.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::{BitMatrix, FGAbelianGroup, IntMatrix};
use crate::cohomology::{
    Coefficients, CohomologyClass, ManifoldData, OddGenerator, Operation, ProductTable, TOP_DEGREE,
};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(line: usize, s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found `{s}`")))
}

fn parse_degree(line: usize, s: &str) -> Result<usize> {
    let d = parse_usize(line, s, "a degree")?;
    if d > TOP_DEGREE {
        return Err(parse_err(line, format!("degree {d} is outside 0..=8")));
    }
    Ok(d)
}

fn parse_int(line: usize, s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| parse_err(line, format!("expected an integer, found `{s}`")))
}

fn parse_vector(line: usize, s: &str) -> Result<Vec<BigInt>> {
    let s = s.trim();
    if s == "-" {
        return Ok(Vec::new());
    }
    if s.is_empty() {
        return Err(parse_err(
            line,
            "expected a vector (use `-` for the empty vector)",
        ));
    }
    s.split(',').map(|t| parse_int(line, t)).collect()
}

fn format_vector(v: &[BigInt]) -> String {
    if v.is_empty() {
        "-".into()
    } else {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

struct PendingMatrix {
    line: usize,
    op: Operation,
    degree: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

struct PendingCup {
    line: usize,
    i: usize,
    j: usize,
    value: Vec<BigInt>,
}

#[derive(Default)]
struct Pending {
    name: Option<String>,
    groups: BTreeMap<usize, (usize, FGAbelianGroup)>,
    mod2: BTreeMap<usize, (usize, usize)>,
    matrices: Vec<PendingMatrix>,
    cup: BTreeMap<(usize, usize), (usize, Vec<PendingCup>)>,
    cup2: BTreeMap<(usize, usize), (usize, Vec<PendingCup>)>,
    pairing: Option<(usize, Vec<BigInt>)>,
    p1: Option<(usize, Vec<BigInt>)>,
    spinc: Option<(usize, Vec<BigInt>)>,
    w2: Option<(usize, Vec<BigInt>)>,
    oddgens_declared: bool,
    oddgens: Vec<(usize, [Vec<BigInt>; 4])>,
}

fn set_once<T>(slot: &mut Option<(usize, T)>, line: usize, value: T, what: &str) -> Result<()> {
    if let Some((prev, _)) = slot {
        return Err(parse_err(
            line,
            format!("duplicate `{what}` (first given on line {prev})"),
        ));
    }
    *slot = Some((line, value));
    Ok(())
}

fn parse_group(line: usize, text: &str) -> Result<FGAbelianGroup> {
    let (free, torsion) = match text.split_once(',') {
        Some((f, t)) => (f, Some(t)),
        None => (text, None),
    };
    let rank = free
        .trim()
        .strip_prefix("free")
        .ok_or_else(|| parse_err(line, format!("expected `free r`, found `{}`", free.trim())))?;
    let mut factors = match torsion {
        Some(t) => {
            let t = t.trim();
            let list = t.strip_prefix("torsion").ok_or_else(|| {
                parse_err(line, format!("expected `torsion d1,d2,...`, found `{t}`"))
            })?;
            let v = parse_vector(line, list)?;
            if v.is_empty() {
                return Err(parse_err(line, "empty torsion list"));
            }
            v
        }
        None => Vec::new(),
    };
    factors.extend(std::iter::repeat_n(
        BigInt::zero(),
        parse_usize(line, rank, "a rank")?,
    ));
    FGAbelianGroup::from_invariant_factors(factors).map_err(|e| parse_err(line, e.to_string()))
}

fn parse_lines(text: &str) -> Result<Pending> {
    let mut p = Pending::default();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).peekable();
    while let Some((ln, raw)) = lines.next() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let rest = rest.trim();
        match keyword {
            "name" => {
                if rest.is_empty() {
                    return Err(parse_err(ln, "empty name"));
                }
                if p.name.is_some() {
                    return Err(parse_err(ln, "duplicate `name`"));
                }
                p.name = Some(rest.to_string());
            }
            "degree" | "mod2" => {
                let (d, body) = rest
                    .split_once(':')
                    .ok_or_else(|| parse_err(ln, format!("expected `{keyword} n: ...`")))?;
                let d = parse_degree(ln, d)?;
                if keyword == "degree" {
                    let g = parse_group(ln, body)?;
                    if p.groups.insert(d, (ln, g)).is_some() {
                        return Err(parse_err(ln, format!("duplicate `degree {d}`")));
                    }
                } else {
                    let dim = parse_usize(ln, body, "a dimension")?;
                    if p.mod2.insert(d, (ln, dim)).is_some() {
                        return Err(parse_err(ln, format!("duplicate `mod2 {d}`")));
                    }
                }
            }
            "matrix" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [op, degree, shape] = parts[..] else {
                    return Err(parse_err(
                        ln,
                        "expected `matrix <rho2|beta|sq2> <degree> <R>x<C>`",
                    ));
                };
                let op = Operation::from_name(op)
                    .ok_or_else(|| parse_err(ln, format!("unknown operation `{op}`")))?;
                let degree = parse_degree(ln, degree)?;
                let (r, c) = shape.split_once('x').ok_or_else(|| {
                    parse_err(ln, format!("expected a shape RxC, found `{shape}`"))
                })?;
                let rows = parse_usize(ln, r, "a row count")?;
                let cols = parse_usize(ln, c, "a column count")?;
                let mut entries = Vec::with_capacity(rows);
                while entries.len() < rows {
                    let Some((rl, row_raw)) = lines.next() else {
                        return Err(parse_err(
                            ln,
                            format!("matrix block ends after {} of {rows} rows", entries.len()),
                        ));
                    };
                    let row_text = row_raw.split('#').next().unwrap_or("").trim();
                    if row_text.is_empty() {
                        continue;
                    }
                    let row = row_text
                        .split(|ch: char| ch.is_whitespace() || ch == ',')
                        .filter(|t| !t.is_empty())
                        .map(|t| parse_int(rl, t))
                        .collect::<Result<Vec<_>>>()?;
                    if row.len() != cols {
                        return Err(Error::MatrixShape {
                            op,
                            degree,
                            expected: (rows, cols),
                            found: (rows, row.len()),
                        });
                    }
                    if op != Operation::Beta && row.iter().any(|v| !v.is_zero() && !v.is_one()) {
                        return Err(parse_err(rl, format!("{op} entries must be 0 or 1")));
                    }
                    entries.push(row);
                }
                if p.matrices.iter().any(|m| m.op == op && m.degree == degree) {
                    return Err(parse_err(ln, format!("duplicate matrix ({op}, {degree})")));
                }
                p.matrices.push(PendingMatrix {
                    line: ln,
                    op,
                    degree,
                    rows,
                    cols,
                    entries,
                });
            }
            "cuptable" | "cuptable2" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [a, b] = parts[..] else {
                    return Err(parse_err(ln, format!("expected `{keyword} a b`")));
                };
                let key = (parse_degree(ln, a)?, parse_degree(ln, b)?);
                let map = if keyword == "cuptable" {
                    &mut p.cup
                } else {
                    &mut p.cup2
                };
                map.entry(key).or_insert_with(|| (ln, Vec::new()));
            }
            "cup" | "cup2" => {
                let (lhs, value) = rest
                    .split_once("->")
                    .ok_or_else(|| parse_err(ln, format!("expected `{keyword} a b i j -> v`")))?;
                let parts: Vec<&str> = lhs.split_whitespace().collect();
                let [a, b, i, j] = parts[..] else {
                    return Err(parse_err(ln, format!("expected `{keyword} a b i j -> v`")));
                };
                let key = (parse_degree(ln, a)?, parse_degree(ln, b)?);
                let entry = PendingCup {
                    line: ln,
                    i: parse_usize(ln, i, "a generator index")?,
                    j: parse_usize(ln, j, "a generator index")?,
                    value: parse_vector(ln, value)?,
                };
                let map = if keyword == "cup" {
                    &mut p.cup
                } else {
                    &mut p.cup2
                };
                map.entry(key)
                    .or_insert_with(|| (ln, Vec::new()))
                    .1
                    .push(entry);
            }
            "pairing" => set_once(&mut p.pairing, ln, parse_vector(ln, rest)?, "pairing")?,
            "p1" => set_once(&mut p.p1, ln, parse_vector(ln, rest)?, "p1")?,
            "spinc" => set_once(&mut p.spinc, ln, parse_vector(ln, rest)?, "spinc")?,
            "w2" => set_once(&mut p.w2, ln, parse_vector(ln, rest)?, "w2")?,
            "oddgens" => {
                if rest != "none" {
                    return Err(parse_err(ln, "expected `oddgens none`"));
                }
                p.oddgens_declared = true;
            }
            "oddgen" => {
                let parts: Vec<&str> = rest.split(';').collect();
                let [g1, g3, g5, g7] = parts[..] else {
                    return Err(parse_err(ln, "expected `oddgen g1 ; g3 ; g5 ; g7`"));
                };
                let gens = [
                    parse_vector(ln, g1)?,
                    parse_vector(ln, g3)?,
                    parse_vector(ln, g5)?,
                    parse_vector(ln, g7)?,
                ];
                p.oddgens.push((ln, gens));
            }
            other => return Err(parse_err(ln, format!("unknown directive `{other}`"))),
        }
    }
    Ok(p)
}

fn class_at(
    data: &ManifoldData,
    line: usize,
    degree: usize,
    coefficients: Coefficients,
    coords: Vec<BigInt>,
) -> Result<CohomologyClass> {
    let r = match coefficients {
        Coefficients::Integers => data.integral_class(degree, coords),
        Coefficients::Mod2 => data.mod2_class(degree, coords),
    };
    r.map_err(|e| parse_err(line, e.to_string()))
}

fn build_table(
    data: &ManifoldData,
    (a, b): (usize, usize),
    coefficients: Coefficients,
    entries: Vec<PendingCup>,
    line: usize,
) -> Result<ProductTable> {
    if a + b > TOP_DEGREE {
        return Err(parse_err(
            line,
            format!("product ({a}, {b}) lands above the top degree"),
        ));
    }
    let left = data.dim(a, coefficients);
    let right = data.dim(b, coefficients);
    let target = data.dim(a + b, coefficients);
    let mut table = ProductTable::zeros(left, right, target);
    for e in entries {
        if e.i >= left || e.j >= right {
            return Err(parse_err(
                e.line,
                format!(
                    "generator index ({}, {}) out of range for a {left}x{right} table",
                    e.i, e.j
                ),
            ));
        }
        if e.value.len() != target {
            return Err(parse_err(
                e.line,
                format!(
                    "product vector has {} coordinates, H^{} needs {target}",
                    e.value.len(),
                    a + b
                ),
            ));
        }
        table.set(e.i, e.j, e.value);
    }
    Ok(table)
}

/// Parses a manifold description without running the validation laws.
pub fn parse(text: &str) -> Result<ManifoldData> {
    let p = parse_lines(text)?;
    let name = p.name.ok_or(Error::MissingSection("name"))?;
    let (pairing_line, pairing) = p.pairing.ok_or(Error::MissingSection("pairing"))?;
    let (p1_line, p1) = p.p1.ok_or(Error::MissingSection("p1"))?;
    let (spinc_line, spinc) = p.spinc.ok_or(Error::MissingSection("spinc"))?;

    let mut data = ManifoldData::empty(name);
    data.integral = vec![FGAbelianGroup::trivial(); TOP_DEGREE + 1];
    data.mod2 = vec![0; TOP_DEGREE + 1];
    for (d, (_, g)) in p.groups {
        data.integral[d] = g;
    }
    for (d, (_, dim)) in p.mod2 {
        data.mod2[d] = dim;
    }

    for m in p.matrices {
        let target_degree = m.degree
            + match m.op {
                Operation::Rho2 => 0,
                Operation::Beta => 1,
                Operation::Sq2 => 2,
            };
        if target_degree > TOP_DEGREE {
            return Err(parse_err(
                m.line,
                format!("({}, {}) matrix lands above the top degree", m.op, m.degree),
            ));
        }
        let (src, tgt) = match m.op {
            Operation::Rho2 => (Coefficients::Integers, Coefficients::Mod2),
            Operation::Beta => (Coefficients::Mod2, Coefficients::Integers),
            Operation::Sq2 => (Coefficients::Mod2, Coefficients::Mod2),
        };
        let expected = (data.dim(target_degree, tgt), data.dim(m.degree, src));
        if expected != (m.rows, m.cols) {
            return Err(Error::MatrixShape {
                op: m.op,
                degree: m.degree,
                expected,
                found: (m.rows, m.cols),
            });
        }
        match m.op {
            Operation::Beta => {
                let mut mat = IntMatrix::zeros(m.rows, m.cols);
                for (i, row) in m.entries.into_iter().enumerate() {
                    for (j, v) in row.into_iter().enumerate() {
                        mat[(i, j)] = v;
                    }
                }
                data.beta.insert(m.degree, mat);
            }
            op => {
                let mut mat = BitMatrix::zeros(m.rows, m.cols);
                for (i, row) in m.entries.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        mat.set(i, j, v.is_one());
                    }
                }
                let map = if op == Operation::Rho2 {
                    &mut data.rho2
                } else {
                    &mut data.sq2
                };
                map.insert(m.degree, mat);
            }
        }
    }

    for (key, (line, entries)) in p.cup {
        let table = build_table(&data, key, Coefficients::Integers, entries, line)?;
        data.cup.insert(key, table);
    }
    for (key, (line, entries)) in p.cup2 {
        let table = build_table(&data, key, Coefficients::Mod2, entries, line)?;
        data.cup_mod2.insert(key, table);
    }

    if pairing.len() != data.ngens(TOP_DEGREE) {
        return Err(parse_err(
            pairing_line,
            format!(
                "pairing has {} entries, H^8 has {} generators",
                pairing.len(),
                data.ngens(TOP_DEGREE)
            ),
        ));
    }
    data.pairing = pairing;
    data.p1 = class_at(&data, p1_line, 4, Coefficients::Integers, p1)?;
    data.spinc = class_at(&data, spinc_line, 2, Coefficients::Integers, spinc)?;
    data.w2 = match p.w2 {
        Some((line, w)) => Some(class_at(&data, line, 2, Coefficients::Mod2, w)?),
        None => None,
    };

    if p.oddgens_declared || !p.oddgens.is_empty() {
        let mut gens = Vec::with_capacity(p.oddgens.len());
        for (line, [g1, g3, g5, g7]) in p.oddgens {
            gens.push(OddGenerator {
                g1: class_at(&data, line, 1, Coefficients::Integers, g1)?,
                g3: class_at(&data, line, 3, Coefficients::Integers, g3)?,
                g5: class_at(&data, line, 5, Coefficients::Integers, g5)?,
                g7: class_at(&data, line, 7, Coefficients::Integers, g7)?,
            });
        }
        data.odd_generators = Some(gens);
    }
    Ok(data)
}

/// Parses and, if `validate` is set, rejects data failing the (non-strict)
/// validation laws.
pub fn parse_checked(text: &str, validate: bool) -> Result<ManifoldData> {
    let data = parse(text)?;
    if validate {
        let report = data.validate(false);
        if !report.is_ok() {
            return Err(Error::Validation(Box::new(report)));
        }
    }
    Ok(data)
}

pub fn load(path: impl AsRef<Path>, validate: bool) -> Result<ManifoldData> {
    let text = std::fs::read_to_string(path)?;
    parse_checked(&text, validate)
}

fn write_group(out: &mut String, degree: usize, g: &FGAbelianGroup) {
    let torsion = g.torsion_factors();
    if torsion.is_empty() {
        let _ = writeln!(out, "degree {degree}: free {}", g.rank());
    } else {
        let _ = writeln!(
            out,
            "degree {degree}: free {}, torsion {}",
            g.rank(),
            format_vector(torsion)
        );
    }
}

fn write_matrix_rows(
    out: &mut String,
    rows: usize,
    cols: usize,
    get: impl Fn(usize, usize) -> String,
) {
    for i in 0..rows {
        let row: Vec<String> = (0..cols).map(|j| get(i, j)).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

fn write_tables(
    out: &mut String,
    keyword: &str,
    declare: &str,
    tables: &BTreeMap<(usize, usize), ProductTable>,
) {
    for (&(a, b), table) in tables {
        let _ = writeln!(out, "{declare} {a} {b}");
        for (i, row) in table.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.iter().any(|c| !c.is_zero()) {
                    let _ = writeln!(out, "{keyword} {a} {b} {i} {j} -> {}", format_vector(v));
                }
            }
        }
    }
}

/// Serializes `data`; [`parse`] reads the output back to equal data.
pub fn to_string(data: &ManifoldData) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name {}", data.name);
    out.push('\n');
    for (d, g) in data.integral.iter().enumerate() {
        write_group(&mut out, d, g);
    }
    out.push('\n');
    for (d, dim) in data.mod2.iter().enumerate() {
        let _ = writeln!(out, "mod2 {d}: {dim}");
    }
    for (op, degree, rows, cols) in data
        .rho2
        .iter()
        .map(|(d, m)| (Operation::Rho2, *d, m.rows(), m.cols()))
        .chain(
            data.beta
                .iter()
                .map(|(d, m)| (Operation::Beta, *d, m.rows(), m.cols())),
        )
        .chain(
            data.sq2
                .iter()
                .map(|(d, m)| (Operation::Sq2, *d, m.rows(), m.cols())),
        )
    {
        out.push('\n');
        let _ = writeln!(out, "matrix {op} {degree} {rows}x{cols}");
        match op {
            Operation::Rho2 => write_matrix_rows(&mut out, rows, cols, |i, j| {
                bit(data.rho2[&degree].get(i, j))
            }),
            Operation::Sq2 => {
                write_matrix_rows(
                    &mut out,
                    rows,
                    cols,
                    |i, j| bit(data.sq2[&degree].get(i, j)),
                )
            }
            Operation::Beta => write_matrix_rows(&mut out, rows, cols, |i, j| {
                data.beta[&degree][(i, j)].to_string()
            }),
        }
    }
    out.push('\n');
    write_tables(&mut out, "cup", "cuptable", &data.cup);
    write_tables(&mut out, "cup2", "cuptable2", &data.cup_mod2);
    out.push('\n');
    let _ = writeln!(out, "pairing {}", format_vector(&data.pairing));
    let _ = writeln!(out, "p1 {}", format_vector(data.p1.coords()));
    let _ = writeln!(out, "spinc {}", format_vector(data.spinc.coords()));
    if let Some(w2) = &data.w2 {
        let _ = writeln!(out, "w2 {}", format_vector(w2.coords()));
    }
    match &data.odd_generators {
        None => {}
        Some(gens) if gens.is_empty() => {
            let _ = writeln!(out, "oddgens none");
        }
        Some(gens) => {
            for g in gens {
                let parts: Vec<String> = g
                    .classes()
                    .iter()
                    .map(|c| format_vector(c.coords()))
                    .collect();
                let _ = writeln!(out, "oddgen {}", parts.join(" ; "));
            }
        }
    }
    out
}

fn bit(b: bool) -> String {
    if b { "1" } else { "0" }.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{builtin, BUILTIN_NAMES};

    const MINIMAL: &str = "\
name s8
degree 0: free 1
degree 8: free 1
mod2 0: 1
mod2 8: 1
pairing 1
p1 -
spinc -
oddgens none
";

    #[test]
    fn minimal_sphere_parses() {
        let d = parse(MINIMAL).unwrap();
        assert_eq!(d.name, "s8");
        assert_eq!(d.integral[8], FGAbelianGroup::free(1));
        assert_eq!(d.odd_generators, Some(vec![]));
        assert!(d.validate(true).is_ok());
    }

    #[test]
    fn builtins_round_trip() {
        for name in BUILTIN_NAMES {
            let d = builtin(name).unwrap();
            let text = to_string(&d);
            let back = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
            assert_eq!(back, d, "{name}");
            assert_eq!(to_string(&back), text);
        }
    }

    #[test]
    fn missing_sections() {
        let without = |key: &str| {
            MINIMAL
                .lines()
                .filter(|l| !l.starts_with(key))
                .collect::<Vec<_>>()
                .join("\n")
        };
        for key in ["name", "pairing", "p1", "spinc"] {
            let err = parse(&without(key)).unwrap_err();
            assert_eq!(err.to_string(), format!("missing section: {key}"));
        }
    }

    #[test]
    fn wrong_rho2_columns_names_the_matrix() {
        let mut text = to_string(&builtin("cp4").unwrap());
        text = text.replace("matrix rho2 2 1x1\n1\n", "matrix rho2 2 1x2\n1 0\n");
        let err = parse(&text).unwrap_err();
        assert!(
            matches!(
                err,
                Error::MatrixShape {
                    op: Operation::Rho2,
                    degree: 2,
                    ..
                }
            ),
            "{err}"
        );
        assert!(err.to_string().contains("(rho2, 2)"));
    }

    #[test]
    fn ragged_row_is_a_shape_error() {
        let text = MINIMAL.replace("pairing 1", "matrix rho2 0 1x1\n1 1\npairing 1");
        let err = parse(&text).unwrap_err();
        assert!(err.to_string().contains("(rho2, 0)"), "{err}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = MINIMAL.replace("mod2 8: 1", "mod2 8: one");
        match parse(&text).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 5),
            e => panic!("unexpected {e}"),
        }
        let text = format!("{MINIMAL}frobnicate 3\n");
        assert!(matches!(
            parse(&text).unwrap_err(),
            Error::Parse { line: 10, .. }
        ));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = MINIMAL.replace("pairing 1", "# fundamental class\n\npairing 1   # +1");
        assert_eq!(parse(&text).unwrap(), parse(MINIMAL).unwrap());
    }

    #[test]
    fn non_canonical_torsion_rejected() {
        let text = MINIMAL.replace(
            "degree 8: free 1",
            "degree 8: free 1\ndegree 6: free 0, torsion 4,2",
        );
        assert!(matches!(
            parse(&text).unwrap_err(),
            Error::Parse { line: 4, .. }
        ));
    }

    #[test]
    fn validation_failure_is_reported() {
        let text = MINIMAL.replace("pairing 1", "pairing 2");
        assert!(parse(&text).is_ok());
        assert!(matches!(
            parse_checked(&text, true).unwrap_err(),
            Error::Validation(_)
        ));
    }
}
