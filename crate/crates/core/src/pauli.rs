//! Signed n-qubit Pauli strings in the symplectic (x, z) bit representation.
//!
//! A string is stored as a pair of bit vectors plus a global phase i^k.
//! Single-qubit decoding is fixed as (x, z) = (0,0) -> I, (1,0) -> X,
//! (0,1) -> Z, (1,1) -> Y, where the bare (1,1) pattern denotes Y itself, so
//! real-signed generator sets stay closed under the representation and the
//! group law reproduces X*Z = -iY.

use crate::circuit::{CliffordCircuit, Gate};
use crate::error::PauliError;
use crate::gf2::BitVec;
use std::fmt;

/// Global phase factor i^k, k in {0,1,2,3}.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Phase {
    PlusOne = 0,
    PlusI = 1,
    MinusOne = 2,
    MinusI = 3,
}

impl Phase {
    pub fn from_exponent(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn exponent(self) -> u8 {
        self as u8
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase::from_exponent(self.exponent() as i64 + other.exponent() as i64)
    }

    pub fn negated(self) -> Phase {
        Phase::from_exponent(self.exponent() as i64 + 2)
    }

    /// True for +1 and -1.
    pub fn is_real(self) -> bool {
        matches!(self, Phase::PlusOne | Phase::MinusOne)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::PlusOne => write!(f, "+"),
            Phase::PlusI => write!(f, "+i"),
            Phase::MinusOne => write!(f, "-"),
            Phase::MinusI => write!(f, "-i"),
        }
    }
}

/// One letter of a Pauli string.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

/// Index sets on which a string acts by X, by Y and by Z; pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supports {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

/// A signed Pauli string on `n` qubits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    phase: Phase,
    x: BitVec,
    z: BitVec,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            n,
            phase: Phase::PlusOne,
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_bits(phase: Phase, x: BitVec, z: BitVec) -> Self {
        assert_eq!(x.len(), z.len());
        PauliOperator {
            n: x.len(),
            phase,
            x,
            z,
        }
    }

    /// Single Z on qubit `q` of an `n`-qubit register.
    pub fn z_on(n: usize, q: usize) -> Self {
        let mut p = PauliOperator::identity(n);
        p.z.set(q, true);
        p
    }

    /// Single X on qubit `q`.
    pub fn x_on(n: usize, q: usize) -> Self {
        let mut p = PauliOperator::identity(n);
        p.x.set(q, true);
        p
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(&self, phase: Phase) -> Self {
        let mut p = self.clone();
        p.phase = phase;
        p
    }

    pub fn negated(&self) -> Self {
        self.with_phase(self.phase.negated())
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    /// The 2n-bit symplectic vector (x-part then z-part), phase dropped.
    pub fn bare_bits(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn is_identity_bits(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn letter(&self, q: usize) -> PauliLetter {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (false, true) => PauliLetter::Z,
            (true, true) => PauliLetter::Y,
        }
    }

    pub fn set_letter(&mut self, q: usize, letter: PauliLetter) {
        let (x, z) = match letter {
            PauliLetter::I => (false, false),
            PauliLetter::X => (true, false),
            PauliLetter::Z => (false, true),
            PauliLetter::Y => (true, true),
        };
        self.x.set(q, x);
        self.z.set(q, z);
    }

    /// Group product self * other with exact phase tracking.
    ///
    /// Writing each letter as i^(xz) X^x Z^z, commuting Z past X costs
    /// (-1)^(z x') per qubit, so the accumulated exponent of i is
    /// x z + x'z' - x''z'' + 2 z x' summed over qubits.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator, PauliError> {
        if self.n != other.n {
            return Err(PauliError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        let t1 = self.x.and_popcount(&self.z) as i64;
        let t2 = other.x.and_popcount(&other.z) as i64;
        let t3 = x.and_popcount(&z) as i64;
        let t4 = self.z.and_popcount(&other.x) as i64;
        let k = self.phase.exponent() as i64 + other.phase.exponent() as i64 + t1 + t2 - t3
            + 2 * t4;
        Ok(PauliOperator {
            n: self.n,
            phase: Phase::from_exponent(k),
            x,
            z,
        })
    }

    /// True iff the symplectic form sum_i (x z' + z x') vanishes mod 2.
    pub fn commutes(&self, other: &PauliOperator) -> Result<bool, PauliError> {
        if self.n != other.n {
            return Err(PauliError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let s = self.x.and_popcount(&other.z) + self.z.and_popcount(&other.x);
        Ok(s % 2 == 0)
    }

    /// Heisenberg update U P U^dag for the circuit's gate sequence, applied
    /// first gate first. The result keeps the exact sign; a real-signed input
    /// stays real-signed.
    pub fn conjugate(&self, circuit: &CliffordCircuit) -> Result<PauliOperator, PauliError> {
        if circuit.width() > self.n {
            return Err(PauliError::GateIndexOutOfRange {
                index: circuit.width() - 1,
                qubits: self.n,
            });
        }
        let mut p = self.clone();
        for gate in circuit.gates() {
            p.apply_gate_conjugation(*gate);
        }
        Ok(p)
    }

    fn apply_gate_conjugation(&mut self, gate: Gate) {
        match gate {
            Gate::H(q) => {
                if self.x.get(q) && self.z.get(q) {
                    self.phase = self.phase.negated();
                }
                let xb = self.x.get(q);
                let zb = self.z.get(q);
                self.x.set(q, zb);
                self.z.set(q, xb);
            }
            Gate::S(q) => {
                if self.x.get(q) && self.z.get(q) {
                    self.phase = self.phase.negated();
                }
                if self.x.get(q) {
                    self.z.flip(q);
                }
            }
            Gate::X(q) => {
                if self.z.get(q) {
                    self.phase = self.phase.negated();
                }
            }
            Gate::Y(q) => {
                if self.x.get(q) != self.z.get(q) {
                    self.phase = self.phase.negated();
                }
            }
            Gate::Z(q) => {
                if self.x.get(q) {
                    self.phase = self.phase.negated();
                }
            }
            Gate::Cx(a, b) => {
                // Sign flips iff x_a z_b (x_b xor z_a xor 1).
                if self.x.get(a) && self.z.get(b) && (self.x.get(b) == self.z.get(a)) {
                    self.phase = self.phase.negated();
                }
                let xa = self.x.get(a);
                if xa {
                    self.x.flip(b);
                }
                if self.z.get(b) {
                    self.z.flip(a);
                }
            }
            Gate::Cz(a, b) => {
                if self.x.get(a) && self.x.get(b) && (self.z.get(a) != self.z.get(b)) {
                    self.phase = self.phase.negated();
                }
                if self.x.get(a) {
                    self.z.flip(b);
                }
                if self.x.get(b) {
                    self.z.flip(a);
                }
            }
        }
    }

    /// The disjoint X / Y / Z support sets.
    pub fn supports(&self) -> Supports {
        let mut s = Supports {
            x: Vec::new(),
            y: Vec::new(),
            z: Vec::new(),
        };
        for q in 0..self.n {
            match self.letter(q) {
                PauliLetter::I => {}
                PauliLetter::X => s.x.push(q),
                PauliLetter::Y => s.y.push(q),
                PauliLetter::Z => s.z.push(q),
            }
        }
        s
    }

    /// Embed into a wider register with this operator starting at `offset`.
    pub fn embed(&self, total: usize, offset: usize) -> PauliOperator {
        assert!(offset + self.n <= total);
        let mut p = PauliOperator::identity(total).with_phase(self.phase);
        for q in 0..self.n {
            p.x.set(offset + q, self.x.get(q));
            p.z.set(offset + q, self.z.get(q));
        }
        p
    }

    /// Embed with an explicit position map: qubit `q` goes to `positions[q]`.
    pub fn embed_at(&self, total: usize, positions: &[usize]) -> PauliOperator {
        assert_eq!(positions.len(), self.n);
        let mut p = PauliOperator::identity(total).with_phase(self.phase);
        for (q, &pos) in positions.iter().enumerate() {
            p.x.set(pos, self.x.get(q));
            p.z.set(pos, self.z.get(q));
        }
        p
    }

    /// Restriction to the given positions (phase kept as-is).
    pub fn restrict(&self, positions: &[usize]) -> PauliOperator {
        PauliOperator {
            n: positions.len(),
            phase: self.phase,
            x: self.x.select(positions),
            z: self.z.select(positions),
        }
    }

    /// Parse a signed literal such as `+XX`, `-XZ`, `+iYYI`, `ZZ`.
    pub fn parse(text: &str) -> Result<PauliOperator, PauliError> {
        let t = text.trim();
        let (phase, rest) = if let Some(r) = t.strip_prefix("+i") {
            (Phase::PlusI, r)
        } else if let Some(r) = t.strip_prefix("-i") {
            (Phase::MinusI, r)
        } else if let Some(r) = t.strip_prefix('+') {
            (Phase::PlusOne, r)
        } else if let Some(r) = t.strip_prefix('-') {
            (Phase::MinusOne, r)
        } else {
            (Phase::PlusOne, t)
        };
        if rest.is_empty() {
            return Err(PauliError::EmptyLiteral);
        }
        let mut p = PauliOperator::identity(rest.chars().count()).with_phase(phase);
        for (q, c) in rest.chars().enumerate() {
            let letter = match c {
                'I' => PauliLetter::I,
                'X' => PauliLetter::X,
                'Y' => PauliLetter::Y,
                'Z' => PauliLetter::Z,
                _ => return Err(PauliError::BadLetter { letter: c }),
            };
            p.set_letter(q, letter);
        }
        Ok(p)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase)?;
        for q in 0..self.n {
            let c = match self.letter(q) {
                PauliLetter::I => 'I',
                PauliLetter::X => 'X',
                PauliLetter::Y => 'Y',
                PauliLetter::Z => 'Z',
            };
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        PauliOperator::parse(s).unwrap()
    }

    #[test]
    fn single_qubit_products() {
        assert_eq!(p("X").multiply(&p("Z")).unwrap(), p("-iY"));
        assert_eq!(p("Z").multiply(&p("X")).unwrap(), p("+iY"));
        assert_eq!(p("X").multiply(&p("Y")).unwrap(), p("+iZ"));
        assert_eq!(p("Y").multiply(&p("Y")).unwrap(), p("I"));
    }

    #[test]
    fn identity_product() {
        for s in ["+XY", "-ZZ", "+iXI"] {
            let q = p(s);
            assert_eq!(PauliOperator::identity(2).multiply(&q).unwrap(), q);
        }
    }

    #[test]
    fn two_qubit_product() {
        assert_eq!(p("XX").multiply(&p("ZZ")).unwrap(), p("-YY"));
    }

    #[test]
    fn commutation() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        assert!(p("II").commutes(&p("XY")).unwrap());
    }

    #[test]
    fn dimension_error() {
        assert!(matches!(
            p("X").multiply(&p("XX")),
            Err(PauliError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn conjugation_table() {
        let h0 = CliffordCircuit::new(vec![Gate::H(0)]);
        assert_eq!(p("X").conjugate(&h0).unwrap(), p("Z"));
        assert_eq!(p("Z").conjugate(&h0).unwrap(), p("X"));
        assert_eq!(p("Y").conjugate(&h0).unwrap(), p("-Y"));
        let s0 = CliffordCircuit::new(vec![Gate::S(0)]);
        assert_eq!(p("X").conjugate(&s0).unwrap(), p("Y"));
        assert_eq!(p("Y").conjugate(&s0).unwrap(), p("-X"));
        assert_eq!(p("Z").conjugate(&s0).unwrap(), p("Z"));
        let cx = CliffordCircuit::new(vec![Gate::Cx(0, 1)]);
        assert_eq!(p("XI").conjugate(&cx).unwrap(), p("XX"));
        assert_eq!(p("IZ").conjugate(&cx).unwrap(), p("ZZ"));
        assert_eq!(p("XZ").conjugate(&cx).unwrap(), p("-YY"));
        let cz = CliffordCircuit::new(vec![Gate::Cz(0, 1)]);
        assert_eq!(p("XI").conjugate(&cz).unwrap(), p("XZ"));
        assert_eq!(p("XY").conjugate(&cz).unwrap(), p("-YX"));
    }

    #[test]
    fn supports_decoding() {
        let s = p("XYZI").supports();
        assert_eq!(s.x, vec![0]);
        assert_eq!(s.y, vec![1]);
        assert_eq!(s.z, vec![2]);
        let e = p("IIII").supports();
        assert!(e.x.is_empty() && e.y.is_empty() && e.z.is_empty());
    }

    #[test]
    fn literal_round_trip() {
        for s in ["+XX", "-XZ", "+iYYI", "-iZIZ", "+I"] {
            assert_eq!(p(s).to_string(), s.replace("", ""));
        }
        // A bare literal parses with implicit plus and prints with it.
        assert_eq!(p("ZZ").to_string(), "+ZZ");
    }
}
