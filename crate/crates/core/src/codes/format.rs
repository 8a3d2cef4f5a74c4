//! Plain-text code definition files.
//!
//! ```text
//! version 1
//! [[4,2,0,2]] four_two_two
//! S:
//! XXXX
//! ZZZZ
//! LX:
//! XXII
//! XIXI
//! LZ:
//! ZIZI
//! ZZII
//! GX:
//! GZ:
//! ```
//!
//! `LX`/`LZ` (and `GX`/`GZ`) entries pair up by position. Blank lines and
//! lines starting with `#` are ignored. Empty sections may be omitted.

use super::{validate, CodeSpec, ConjugatePair};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Copy, Clone, PartialEq, Eq)]
enum Section {
    S,
    Lx,
    Lz,
    Gx,
    Gz,
}

fn fail(line: usize, reason: impl Into<String>) -> Error {
    Error::CodeFormat {
        line,
        reason: reason.into(),
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<(usize, usize, usize, usize, String)> {
    let rest = line
        .strip_prefix("[[")
        .ok_or_else(|| fail(line_no, "header must start with [["))?;
    let (params, name) = rest
        .split_once("]]")
        .ok_or_else(|| fail(line_no, "header is missing ]]"))?;
    let nums = params
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| fail(line_no, "header parameters must be integers"))?;
    let [n, k, r, d] = nums[..] else {
        return Err(fail(line_no, "header needs exactly [[n,k,r,d]]"));
    };
    let name = name.trim();
    if name.is_empty() {
        return Err(fail(line_no, "header is missing the code name"));
    }
    Ok((n, k, r, d, name.to_string()))
}

/// Parses and validates a code file; invalid codes are rejected with the
/// full validation report.
pub fn parse_code(text: &str) -> Result<CodeSpec> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (vline, version) = lines.next().ok_or_else(|| fail(1, "empty file"))?;
    let v = version
        .strip_prefix("version")
        .and_then(|v| v.trim().parse::<u32>().ok())
        .ok_or_else(|| fail(vline, "first line must be `version <number>`"))?;
    if v != FORMAT_VERSION {
        return Err(fail(vline, format!("unsupported version {v}")));
    }
    let (hline, header) = lines.next().ok_or_else(|| fail(vline, "missing header"))?;
    let (n, k, r, d, name) = parse_header(hline, header)?;

    let mut section = None;
    let mut buckets: [Vec<PauliOperator>; 5] = Default::default();
    for (no, line) in lines {
        let next = match line {
            "S:" => Some(Section::S),
            "LX:" => Some(Section::Lx),
            "LZ:" => Some(Section::Lz),
            "GX:" => Some(Section::Gx),
            "GZ:" => Some(Section::Gz),
            _ => None,
        };
        if next.is_some() {
            section = next;
            continue;
        }
        let current = section.ok_or_else(|| fail(no, "operator before any section"))?;
        let op: PauliOperator = line.parse().map_err(|e: Error| fail(no, e.to_string()))?;
        if op.n_qubits() != n {
            return Err(fail(no, format!("{op} has {} qubits, header says {n}", op.n_qubits())));
        }
        buckets[current as usize].push(op);
    }
    let [s, lx, lz, gx, gz] = buckets;
    if lx.len() != lz.len() {
        return Err(fail(hline, format!("{} LX entries but {} LZ entries", lx.len(), lz.len())));
    }
    if gx.len() != gz.len() {
        return Err(fail(hline, format!("{} GX entries but {} GZ entries", gx.len(), gz.len())));
    }
    let pair_up = |xs: Vec<PauliOperator>, zs: Vec<PauliOperator>| {
        xs.into_iter()
            .zip(zs)
            .map(|(x, z)| ConjugatePair::new(x, z))
            .collect::<Vec<_>>()
    };
    let code = CodeSpec {
        name,
        n,
        k,
        r,
        d,
        stabilizers: s,
        logicals: pair_up(lx, lz),
        gauges: pair_up(gx, gz),
    };
    let report = validate(&code);
    if report.is_ok() {
        Ok(code)
    } else {
        Err(Error::InvalidCode(report.violations))
    }
}

/// Writes `code` in the format [`parse_code`] reads.
pub fn write_code(code: &CodeSpec) -> String {
    let mut out = format!("version {FORMAT_VERSION}\n{} {}\n", code.label(), code.name);
    let mut section = |title: &str, ops: Vec<&PauliOperator>| {
        out.push_str(title);
        out.push('\n');
        for op in ops {
            out.push_str(&op.to_string());
            out.push('\n');
        }
    };
    section("S:", code.stabilizers.iter().collect());
    section("LX:", code.logicals.iter().map(|p| &p.x).collect());
    section("LZ:", code.logicals.iter().map(|p| &p.z).collect());
    section("GX:", code.gauges.iter().map(|p| &p.x).collect());
    section("GZ:", code.gauges.iter().map(|p| &p.z).collect());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::lookup;

    #[test]
    fn catalog_codes_round_trip() {
        for name in ["steane", "four_two_two", "bacon_shor(3)", "repetition(5)", "five_qubit"] {
            let code = lookup(name).unwrap();
            let text = write_code(&code);
            assert_eq!(parse_code(&text).unwrap(), code, "{name}");
        }
    }

    #[test]
    fn doc_example_parses() {
        let text = "# comment\nversion 1\n[[4,2,0,2]] four_two_two\nS:\nXXXX\nZZZZ\nLX:\nXXII\nXIXI\nLZ:\nZIZI\nZZII\n";
        let code = parse_code(text).unwrap();
        assert_eq!(code, lookup("four_two_two").unwrap());
    }

    #[test]
    fn commutation_invalid_file_embeds_report() {
        let text = "version 1\n[[3,1,0,1]] broken\nS:\nZZI\nXIX\nLX:\nXXX\nLZ:\nZII\n";
        match parse_code(text) {
            Err(Error::InvalidCode(v)) => {
                assert!(v.iter().any(|m| m.contains("anticommute")), "{v:?}");
            }
            other => panic!("expected InvalidCode, got {other:?}"),
        }
    }

    #[test]
    fn structural_errors_carry_line_numbers() {
        let cases = [
            ("[[3,1,0,1]] x\n", 1),
            ("version 2\n[[3,1,0,1]] x\n", 1),
            ("version 1\n[[3,1,0]] x\n", 2),
            ("version 1\n[[3,1,0,1]] x\nZZI\n", 3),
            ("version 1\n[[3,1,0,1]] x\nS:\nZZ\n", 4),
            ("version 1\n[[3,1,0,1]] x\nS:\nZQZ\n", 4),
        ];
        for (text, line) in cases {
            match parse_code(text) {
                Err(Error::CodeFormat { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
