//! Built-in codes with fixed, conventional generator choices.
//!
//! | entry            | parameters          | stabilizers                                   | logicals                         |
//! |------------------|---------------------|-----------------------------------------------|----------------------------------|
//! | `repetition(n)`  | `[[n,1,0,1]]`, odd n ≥ 3 | `Z_i Z_{i+1}`                            | `X_L = X^{⊗n}`, `Z_L = Z_1`      |
//! | `five_qubit`     | `[[5,1,0,3]]`       | cyclic shifts of `XZZXI` (four of them)       | `X^{⊗5}`, `Z^{⊗5}`               |
//! | `steane`         | `[[7,1,0,3]]`       | Hamming rows `IIIXXXX IXXIIXX XIXIXIX` in X and Z | `X^{⊗7}`, `Z^{⊗7}`           |
//! | `four_two_two`   | `[[4,2,0,2]]`       | `XXXX`, `ZZZZ`                                | `(XXII, ZIZI)`, `(XIXI, ZZII)`   |
//! | `bacon_shor(m)`  | `[[m², 1, (m-1)², m]]`, m ≥ 2 | X on adjacent column pairs, Z on adjacent row pairs | X on column 1, Z on row 1 |
//!
//! The repetition code only protects against bit flips; its distance label
//! is 1 since `Z_1` is a logical operator.
//!
//! Bacon-Shor qubits are laid out row-major on an `m × m` grid. Gauge pair
//! `(a, b)` for `1 ≤ a, b < m` (0-based row, column) is
//! `X_{(a,0)} X_{(a,b)}` (a product of horizontal XX links in row `a`) with
//! `Z_{(0,b)} Z_{(a,b)}` (a product of vertical ZZ links in column `b`);
//! these overlap only at `(a, b)`, giving `(m-1)²` independent conjugate pairs.

use crate::error::{Error, Result};
use crate::pauli::{GeneratorSet, Pauli, PauliOperator};

use super::{CodeSpec, ConjugatePair};

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: [&str; 5] = ["repetition", "five_qubit", "steane", "four_two_two", "bacon_shor"];

/// Looks up a catalog code; `param` is the size for `repetition` and
/// `bacon_shor` and must be absent otherwise.
pub fn catalog(name: &str, param: Option<usize>) -> Result<CodeSpec> {
    let no_param = |code: CodeSpec| match param {
        None => Ok(code),
        Some(_) => Err(Error::InvalidParameter(format!("{name} takes no parameter"))),
    };
    let code = match name {
        "repetition" => repetition(param.ok_or_else(|| missing(name))?)?,
        "bacon_shor" => bacon_shor(param.ok_or_else(|| missing(name))?)?,
        "five_qubit" => no_param(five_qubit())?,
        "steane" => no_param(steane())?,
        "four_two_two" => no_param(four_two_two())?,
        _ => return Err(Error::UnknownCode(name.to_string())),
    };
    code.validated()
}

fn missing(name: &str) -> Error {
    Error::InvalidParameter(format!("{name} needs a size parameter, e.g. {name}(3)"))
}

/// Parses `name` or `name(p)`, e.g. `steane`, `bacon_shor(3)`.
pub fn lookup(reference: &str) -> Result<CodeSpec> {
    let reference = reference.trim();
    match reference.split_once('(') {
        None => catalog(reference, None),
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::UnknownCode(reference.to_string()))?;
            let p = inner
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("bad size in {reference:?}")))?;
            catalog(name.trim(), Some(p))
        }
    }
}

fn ops(strings: &[&str]) -> Vec<PauliOperator> {
    strings
        .iter()
        .map(|s| s.parse().expect("catalog strings are well formed"))
        .collect()
}

fn pair(x: &str, z: &str) -> ConjugatePair {
    ConjugatePair::parse(x, z).expect("catalog strings are well formed")
}

fn uniform(n: usize, p: Pauli) -> PauliOperator {
    let mut out = PauliOperator::identity(n);
    for q in 0..n {
        out.set_qubit(q, p);
    }
    out
}

fn on_qubits(n: usize, qubits: &[usize], p: Pauli) -> PauliOperator {
    let mut out = PauliOperator::identity(n);
    for &q in qubits {
        out.set_qubit(q, p);
    }
    out
}

pub fn repetition(n: usize) -> Result<CodeSpec> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "repetition code needs odd n >= 3, got {n}"
        )));
    }
    let stabilizers = (0..n - 1).map(|i| on_qubits(n, &[i, i + 1], Pauli::Z)).collect();
    Ok(CodeSpec {
        name: format!("repetition({n})"),
        n,
        k: 1,
        r: 0,
        d: 1,
        stabilizers,
        logicals: vec![ConjugatePair::new(uniform(n, Pauli::X), on_qubits(n, &[0], Pauli::Z))],
        gauges: vec![],
    })
}

pub fn five_qubit() -> CodeSpec {
    CodeSpec {
        name: "five_qubit".into(),
        n: 5,
        k: 1,
        r: 0,
        d: 3,
        stabilizers: ops(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]),
        logicals: vec![pair("XXXXX", "ZZZZZ")],
        gauges: vec![],
    }
}

pub fn steane() -> CodeSpec {
    CodeSpec {
        name: "steane".into(),
        n: 7,
        k: 1,
        r: 0,
        d: 3,
        stabilizers: ops(&["IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"]),
        logicals: vec![pair("XXXXXXX", "ZZZZZZZ")],
        gauges: vec![],
    }
}

pub fn four_two_two() -> CodeSpec {
    CodeSpec {
        name: "four_two_two".into(),
        n: 4,
        k: 2,
        r: 0,
        d: 2,
        stabilizers: ops(&["XXXX", "ZZZZ"]),
        logicals: vec![pair("XXII", "ZIZI"), pair("XIXI", "ZZII")],
        gauges: vec![],
    }
}

pub fn bacon_shor(m: usize) -> Result<CodeSpec> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("bacon_shor needs m >= 2, got {m}")));
    }
    let n = m * m;
    let at = |row: usize, col: usize| row * m + col;
    let mut stabilizers = Vec::new();
    for c in 0..m - 1 {
        let qubits: Vec<usize> = (0..m).flat_map(|row| [at(row, c), at(row, c + 1)]).collect();
        stabilizers.push(on_qubits(n, &qubits, Pauli::X));
    }
    for row in 0..m - 1 {
        let qubits: Vec<usize> = (0..m).flat_map(|c| [at(row, c), at(row + 1, c)]).collect();
        stabilizers.push(on_qubits(n, &qubits, Pauli::Z));
    }
    let column0: Vec<usize> = (0..m).map(|row| at(row, 0)).collect();
    let row0: Vec<usize> = (0..m).map(|c| at(0, c)).collect();
    let logicals = vec![ConjugatePair::new(
        on_qubits(n, &column0, Pauli::X),
        on_qubits(n, &row0, Pauli::Z),
    )];
    let mut gauges = Vec::new();
    for a in 1..m {
        for b in 1..m {
            gauges.push(ConjugatePair::new(
                on_qubits(n, &[at(a, 0), at(a, b)], Pauli::X),
                on_qubits(n, &[at(0, b), at(a, b)], Pauli::Z),
            ));
        }
    }
    Ok(CodeSpec {
        name: format!("bacon_shor({m})"),
        n,
        k: 1,
        r: (m - 1) * (m - 1),
        d: m,
        stabilizers,
        logicals,
        gauges,
    })
}

/// Stabilizer generators `{X^{⊗a}} ∪ {Z_i Z_{i+1}}` of the `a`-qubit cat state.
pub fn cat_state_stabilizers(a: usize) -> Result<GeneratorSet> {
    if a < 2 {
        return Err(Error::InvalidParameter(format!("cat state needs a >= 2, got {a}")));
    }
    let mut gens = vec![uniform(a, Pauli::X)];
    gens.extend((0..a - 1).map(|i| on_qubits(a, &[i, i + 1], Pauli::Z)));
    GeneratorSet::new(a, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::validate;
    use crate::pauli::centralizer;

    #[test]
    fn every_entry_validates() {
        for code in [
            lookup("repetition(3)").unwrap(),
            lookup("repetition(5)").unwrap(),
            lookup("five_qubit").unwrap(),
            lookup("steane").unwrap(),
            lookup("four_two_two").unwrap(),
            lookup("bacon_shor(2)").unwrap(),
            lookup("bacon_shor(3)").unwrap(),
            lookup("bacon_shor(4)").unwrap(),
        ] {
            assert!(validate(&code).is_ok(), "{}", code.name);
        }
    }

    #[test]
    fn parameters_match_conventions() {
        let bs = lookup("bacon_shor(3)").unwrap();
        assert_eq!((bs.n, bs.k, bs.r, bs.d), (9, 1, 4, 3));
        assert_eq!(bs.stabilizers.len(), 4);
        let f = lookup("four_two_two").unwrap();
        assert_eq!((f.n, f.k, f.r, f.stabilizers.len()), (4, 2, 0, 2));
        let rep = lookup("repetition(3)").unwrap();
        let s: Vec<String> = rep.stabilizers.iter().map(|s| s.to_string()).collect();
        assert_eq!(s, ["ZZI", "IZZ"]);
    }

    #[test]
    fn bad_references() {
        assert!(matches!(lookup("toric"), Err(Error::UnknownCode(_))));
        assert!(lookup("bacon_shor(1)").is_err());
        assert!(lookup("repetition(4)").is_err());
        assert!(lookup("repetition").is_err());
        assert!(lookup("steane(3)").is_err());
        assert!(lookup("bacon_shor(x)").is_err());
    }

    #[test]
    fn cat_states() {
        let two: Vec<String> = cat_state_stabilizers(2).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(two, ["XX", "ZZ"]);
        let three: Vec<String> = cat_state_stabilizers(3).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(three, ["XXX", "ZZI", "IZZ"]);
        let four = cat_state_stabilizers(4).unwrap();
        assert_eq!(four.rank(), 4);
        let c = centralizer(&four);
        assert_eq!(c.len(), 4);
        assert!(c.same_span(&four));
        assert!(cat_state_stabilizers(1).is_err());
        for a in 2..8 {
            let g = cat_state_stabilizers(a).unwrap();
            assert!(g.commutes_with(&g));
        }
    }
}
