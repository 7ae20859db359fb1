//! Clifford circuits over the gate set {H, S, CX} plus the conveniences
//! {X, Y, Z, CZ}. Gates are applied first-to-last.

use crate::error::ParseError;
use std::fmt;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cx(usize, usize),
    Cz(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => vec![q],
            Gate::Cx(a, b) | Gate::Cz(a, b) => vec![a, b],
        }
    }

    /// Shift or remap qubit indices through a lookup table.
    pub fn map_qubits(&self, map: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(map(q)),
            Gate::S(q) => Gate::S(map(q)),
            Gate::X(q) => Gate::X(map(q)),
            Gate::Y(q) => Gate::Y(map(q)),
            Gate::Z(q) => Gate::Z(map(q)),
            Gate::Cx(a, b) => Gate::Cx(map(a), map(b)),
            Gate::Cz(a, b) => Gate::Cz(map(a), map(b)),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H {}", q),
            Gate::S(q) => write!(f, "S {}", q),
            Gate::X(q) => write!(f, "X {}", q),
            Gate::Y(q) => write!(f, "Y {}", q),
            Gate::Z(q) => write!(f, "Z {}", q),
            Gate::Cx(a, b) => write!(f, "CX {} {}", a, b),
            Gate::Cz(a, b) => write!(f, "CZ {} {}", a, b),
        }
    }
}

/// An ordered gate sequence; may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CliffordCircuit {
    gates: Vec<Gate>,
}

impl CliffordCircuit {
    pub fn new(gates: Vec<Gate>) -> Self {
        CliffordCircuit { gates }
    }

    pub fn empty() -> Self {
        CliffordCircuit { gates: Vec::new() }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, other: &CliffordCircuit) {
        self.gates.extend_from_slice(&other.gates);
    }

    /// Smallest register size containing every touched qubit.
    pub fn width(&self) -> usize {
        self.gates
            .iter()
            .flat_map(|g| g.qubits())
            .max()
            .map_or(0, |m| m + 1)
    }

    /// The inverse circuit: gates reversed and inverted. Every gate in the
    /// set is self-inverse except S, whose inverse is emitted as Z then S.
    pub fn inverse(&self) -> CliffordCircuit {
        let mut gates = Vec::with_capacity(self.gates.len() + 1);
        for g in self.gates.iter().rev() {
            match *g {
                Gate::S(q) => {
                    gates.push(Gate::Z(q));
                    gates.push(Gate::S(q));
                }
                other => gates.push(other),
            }
        }
        CliffordCircuit { gates }
    }

    pub fn map_qubits(&self, map: impl Fn(usize) -> usize + Copy) -> CliffordCircuit {
        CliffordCircuit {
            gates: self.gates.iter().map(|g| g.map_qubits(map)).collect(),
        }
    }

    /// Parse a semicolon-separated gate list, e.g. `H 0;CX 0 1;S 2`.
    pub fn parse(text: &str) -> Result<CliffordCircuit, ParseError> {
        let mut gates = Vec::new();
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            gates.push(parse_gate(part)?);
        }
        Ok(CliffordCircuit { gates })
    }
}

pub fn parse_gate(text: &str) -> Result<Gate, ParseError> {
    let mut it = text.split_whitespace();
    let name = it.next().unwrap_or("");
    let args: Vec<&str> = it.collect();
    let one = |args: &[&str]| -> Result<usize, ParseError> {
        if args.len() != 1 {
            return Err(ParseError::other(format!(
                "gate `{}` takes one qubit index",
                name
            )));
        }
        args[0]
            .parse()
            .map_err(|_| ParseError::other(format!("bad qubit index `{}`", args[0])))
    };
    let two = |args: &[&str]| -> Result<(usize, usize), ParseError> {
        if args.len() != 2 {
            return Err(ParseError::other(format!(
                "gate `{}` takes two qubit indices",
                name
            )));
        }
        let a = args[0]
            .parse()
            .map_err(|_| ParseError::other(format!("bad qubit index `{}`", args[0])))?;
        let b = args[1]
            .parse()
            .map_err(|_| ParseError::other(format!("bad qubit index `{}`", args[1])))?;
        if a == b {
            return Err(ParseError::other(format!(
                "gate `{}` needs distinct qubits",
                name
            )));
        }
        Ok((a, b))
    };
    match name {
        "H" => Ok(Gate::H(one(&args)?)),
        "S" => Ok(Gate::S(one(&args)?)),
        "X" => Ok(Gate::X(one(&args)?)),
        "Y" => Ok(Gate::Y(one(&args)?)),
        "Z" => Ok(Gate::Z(one(&args)?)),
        "CX" => {
            let (a, b) = two(&args)?;
            Ok(Gate::Cx(a, b))
        }
        "CZ" => {
            let (a, b) = two(&args)?;
            Ok(Gate::Cz(a, b))
        }
        other => Err(ParseError::other(format!("unknown gate `{}`", other))),
    }
}

impl fmt::Display for CliffordCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gates.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliOperator;

    #[test]
    fn parse_round_trip() {
        let c = CliffordCircuit::parse("H 0;CX 0 1; S 2;CZ 1 3").unwrap();
        assert_eq!(c.to_string(), "H 0;CX 0 1;S 2;CZ 1 3");
        assert_eq!(c.width(), 4);
        assert!(CliffordCircuit::parse("Q 0").is_err());
        assert!(CliffordCircuit::parse("CX 1 1").is_err());
    }

    #[test]
    fn inverse_undoes_conjugation() {
        let c = CliffordCircuit::parse("H 0;S 0;CX 0 1;CZ 1 2;S 2;Y 1").unwrap();
        let inv = c.inverse();
        for lit in ["+XIZ", "-YZX", "+iZZY"] {
            let p = PauliOperator::parse(lit).unwrap();
            let back = p.conjugate(&c).unwrap().conjugate(&inv).unwrap();
            assert_eq!(back, p);
        }
    }
}
