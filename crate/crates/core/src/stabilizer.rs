//! Stabilizer-state engine: tableau construction, Clifford evolution, signed
//! group membership, and exact computational-basis measurement distributions.

use crate::circuit::CliffordCircuit;
use crate::dist::OutcomeDistribution;
use crate::error::{PauliError, TableauError};
use crate::gf2::{self, BitVec};
use crate::pauli::{PauliOperator, Phase};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use std::collections::BTreeMap;

/// Signed membership of a Pauli string in a stabilizer group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipResult {
    /// g itself is in the group.
    PlusMember,
    /// -g is in the group.
    MinusMember,
    /// Neither sign is in the group.
    NonMember,
}

/// A pure stabilizer state on `n` qubits, stored as `n` real-signed
/// generators plus the matching destabilizer rows.
///
/// Destabilizer row i anticommutes with generator i and commutes with every
/// other row; this bookkeeping is kept through all operations even though
/// terminal-only measurement does not strictly need it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    gens: Vec<PauliOperator>,
    destabs: Vec<PauliOperator>,
}

impl StabilizerTableau {
    /// |0...0> on `n` qubits: generators Z_i, destabilizers X_i.
    pub fn zero_state(n: usize) -> Self {
        assert!(n >= 1, "zero_state needs at least one qubit");
        StabilizerTableau {
            n,
            gens: (0..n).map(|q| PauliOperator::z_on(n, q)).collect(),
            destabs: (0..n).map(|q| PauliOperator::x_on(n, q)).collect(),
        }
    }

    /// Build a tableau from `n` signed generators of width `n`.
    ///
    /// Rejects imaginary signs, anticommuting pairs and dependent sets
    /// (a dependent set with inconsistent signs would put -I in the group,
    /// so dependence is rejected outright). Destabilizers are completed
    /// internally by solving the symplectic pairing conditions.
    pub fn state_from_generators(gens: &[PauliOperator]) -> Result<Self, TableauError> {
        if gens.is_empty() {
            return Err(TableauError::WrongCount {
                expected: 0,
                got: 0,
            });
        }
        let n = gens[0].num_qubits();
        if gens.len() != n || gens.iter().any(|g| g.num_qubits() != n) {
            return Err(TableauError::WrongCount {
                expected: n,
                got: gens.len(),
            });
        }
        for (i, g) in gens.iter().enumerate() {
            if !g.phase().is_real() {
                return Err(TableauError::ImaginarySign { index: i });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if !gens[i].commutes(&gens[j])? {
                    return Err(TableauError::NonCommuting { first: i, second: j });
                }
            }
        }
        // Independence, reported at the first offending generator.
        let mut rows: Vec<BitVec> = Vec::with_capacity(n);
        for (i, g) in gens.iter().enumerate() {
            rows.push(g.bare_bits());
            if gf2::rank(&rows) != rows.len() {
                return Err(TableauError::Dependent { index: i });
            }
        }
        let destabs = complete_destabilizers(gens);
        Ok(StabilizerTableau {
            n,
            gens: gens.to_vec(),
            destabs,
        })
    }

    /// Convenience: build from signed literals such as `["+XX", "+ZZ"]`.
    pub fn from_literals(literals: &[&str]) -> Result<Self, TableauError> {
        let gens = literals
            .iter()
            .map(|s| PauliOperator::parse(s))
            .collect::<Result<Vec<_>, PauliError>>()?;
        Self::state_from_generators(&gens)
    }

    /// Assemble a tableau from rows already known to satisfy the invariants
    /// (embeddings of valid tableaus on disjoint supports).
    pub(crate) fn from_parts(
        n: usize,
        gens: Vec<PauliOperator>,
        destabs: Vec<PauliOperator>,
    ) -> Self {
        debug_assert_eq!(gens.len(), n);
        debug_assert_eq!(destabs.len(), n);
        debug_assert!(check_destabilizers(&gens, &destabs));
        StabilizerTableau { n, gens, destabs }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.gens
    }

    pub fn destabilizers(&self) -> &[PauliOperator] {
        &self.destabs
    }

    /// Conjugate every row by the circuit.
    pub fn apply_circuit(&self, circuit: &CliffordCircuit) -> Result<Self, TableauError> {
        if circuit.width() > self.n {
            return Err(TableauError::Pauli(PauliError::GateIndexOutOfRange {
                index: circuit.width() - 1,
                qubits: self.n,
            }));
        }
        let gens = self
            .gens
            .iter()
            .map(|g| g.conjugate(circuit))
            .collect::<Result<Vec<_>, _>>()?;
        let destabs = self
            .destabs
            .iter()
            .map(|d| d.conjugate(circuit))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(StabilizerTableau {
            n: self.n,
            gens,
            destabs,
        })
    }

    /// Tensor product; `self`'s qubits come first.
    pub fn tensor(&self, other: &StabilizerTableau) -> StabilizerTableau {
        let n = self.n + other.n;
        let mut gens = Vec::with_capacity(n);
        let mut destabs = Vec::with_capacity(n);
        for g in &self.gens {
            gens.push(g.embed(n, 0));
        }
        for g in &other.gens {
            gens.push(g.embed(n, self.n));
        }
        for d in &self.destabs {
            destabs.push(d.embed(n, 0));
        }
        for d in &other.destabs {
            destabs.push(d.embed(n, self.n));
        }
        StabilizerTableau { n, gens, destabs }
    }

    /// Decide whether +p or -p lies in the stabilizer group.
    ///
    /// Gaussian elimination expresses p's bare string in the generator row
    /// space when possible; the sign is accumulated exactly through the
    /// corresponding generator product.
    pub fn membership(&self, p: &PauliOperator) -> Result<MembershipResult, TableauError> {
        if p.num_qubits() != self.n {
            return Err(TableauError::Pauli(PauliError::DimensionMismatch {
                left: p.num_qubits(),
                right: self.n,
            }));
        }
        if !p.phase().is_real() {
            return Err(TableauError::ImaginaryOperand);
        }
        let rows: Vec<BitVec> = self.gens.iter().map(|g| g.bare_bits()).collect();
        let comb = match gf2::row_space_solve(&rows, &p.bare_bits()) {
            Some(c) => c,
            None => return Ok(MembershipResult::NonMember),
        };
        let mut acc = PauliOperator::identity(self.n);
        for i in comb.iter_ones() {
            acc = acc.multiply(&self.gens[i]).expect("widths agree");
        }
        debug_assert!(acc.phase().is_real());
        debug_assert_eq!(acc.bare_bits(), p.bare_bits());
        if acc.phase() == p.phase() {
            Ok(MembershipResult::PlusMember)
        } else {
            Ok(MembershipResult::MinusMember)
        }
    }

    /// The signed Z-type constraints satisfied by a computational-basis
    /// measurement: each element (support S, parity s) means the measured
    /// bits obey xor_{i in S} b_i = s with certainty.
    pub fn z_constraints(&self) -> Vec<(BitVec, bool)> {
        let xrows: Vec<BitVec> = self.gens.iter().map(|g| g.x_bits().clone()).collect();
        let kernel = gf2::left_kernel(&xrows);
        let mut constraints = Vec::with_capacity(kernel.len());
        for comb in kernel {
            let mut acc = PauliOperator::identity(self.n);
            for i in comb.iter_ones() {
                acc = acc.multiply(&self.gens[i]).expect("widths agree");
            }
            debug_assert!(acc.x_bits().is_zero());
            debug_assert!(acc.phase().is_real());
            constraints.push((acc.z_bits().clone(), acc.phase() == Phase::MinusOne));
        }
        constraints
    }

    /// Exact distribution of measuring every qubit in the computational
    /// basis: uniform over the affine subspace carved out by the Z-type
    /// constraints, probability 2^-(n-r) per support point.
    pub fn z_distribution(&self) -> OutcomeDistribution {
        let constraints = self.z_constraints();
        let subspace = AffineSubspace::from_constraints(self.n, &constraints);
        let prob = BigRational::new(BigInt::one(), BigInt::one() << subspace.free_cols.len());
        let mut entries = BTreeMap::new();
        for bits in subspace.enumerate() {
            entries.insert(bits, prob.clone());
        }
        OutcomeDistribution::single_group(self.n, entries)
    }

    /// Debug dump: one signed literal per line, generators first.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for g in &self.gens {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

/// Solution set of a consistent GF(2) affine system over n bit variables,
/// held as reduced constraints; points are materialized only on demand.
struct AffineSubspace {
    n: usize,
    // Reduced rows as (pivot column, row support, rhs).
    reduced: Vec<(usize, BitVec, bool)>,
    free_cols: Vec<usize>,
}

impl AffineSubspace {
    fn from_constraints(n: usize, constraints: &[(BitVec, bool)]) -> Self {
        let mut reduced: Vec<(usize, BitVec, bool)> = Vec::new();
        for (support, parity) in constraints {
            let mut row = support.clone();
            let mut rhs = *parity;
            for (pivot, r, b) in &reduced {
                if row.get(*pivot) {
                    row.xor_assign(r);
                    rhs ^= b;
                }
            }
            if let Some(pivot) = row.first_one() {
                // Back-substitute into earlier rows to reach reduced form.
                for (_, r, b) in reduced.iter_mut() {
                    if r.get(pivot) {
                        r.xor_assign(&row);
                        *b ^= rhs;
                    }
                }
                reduced.push((pivot, row, rhs));
            } else {
                // A valid tableau never yields an inconsistent system.
                assert!(!rhs, "inconsistent Z constraints from a valid tableau");
            }
        }
        let pivots: std::collections::BTreeSet<usize> =
            reduced.iter().map(|(p, _, _)| *p).collect();
        let free_cols = (0..n).filter(|c| !pivots.contains(c)).collect();
        AffineSubspace {
            n,
            reduced,
            free_cols,
        }
    }

    fn enumerate(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        let count: u64 = 1u64 << self.free_cols.len();
        (0..count).map(move |mask| {
            let mut bits = vec![false; self.n];
            for (j, &col) in self.free_cols.iter().enumerate() {
                bits[col] = (mask >> j) & 1 != 0;
            }
            for (pivot, row, rhs) in &self.reduced {
                let mut v = *rhs;
                for c in row.iter_ones() {
                    if c != *pivot {
                        v ^= bits[c];
                    }
                }
                bits[*pivot] = v;
            }
            bits
        })
    }
}

/// Complete destabilizer rows for a validated generator set by solving the
/// symplectic pairing conditions <d_i, g_j> = delta_ij, <d_i, d_j> = 0.
fn complete_destabilizers(gens: &[PauliOperator]) -> Vec<PauliOperator> {
    let n = gens.len();
    // <x, g> = (swapped g bits) . x, so the system rows are z-part || x-part.
    let sys: Vec<BitVec> = gens
        .iter()
        .map(|g| g.z_bits().concat(g.x_bits()))
        .collect();
    let mut raw: Vec<BitVec> = Vec::with_capacity(n);
    for i in 0..n {
        let rhs: Vec<bool> = (0..n).map(|j| j == i).collect();
        let e = gf2::solve_system(&sys, &rhs)
            .expect("symplectic form is nondegenerate; pairing system is solvable");
        raw.push(e);
    }
    let sympl = |a: &BitVec, b: &BitVec| -> bool {
        // a, b are 2n-bit (x||z) vectors.
        let (ax, az) = split_bits(a, gens[0].num_qubits());
        let (bx, bz) = split_bits(b, gens[0].num_qubits());
        (ax.and_popcount(&bz) + az.and_popcount(&bx)) % 2 == 1
    };
    let s: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|k| sympl(&raw[i], &raw[k])).collect())
        .collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut d = raw[i].clone();
        for k in (i + 1)..n {
            if s[i][k] {
                d.xor_assign(&gens[k].bare_bits());
            }
        }
        let (x, z) = split_bits(&d, gens[0].num_qubits());
        out.push(PauliOperator::from_bits(Phase::PlusOne, x, z));
    }
    debug_assert!(check_destabilizers(gens, &out));
    out
}

fn split_bits(v: &BitVec, n: usize) -> (BitVec, BitVec) {
    let x = v.select(&(0..n).collect::<Vec<_>>());
    let z = v.select(&(n..2 * n).collect::<Vec<_>>());
    (x, z)
}

fn check_destabilizers(gens: &[PauliOperator], destabs: &[PauliOperator]) -> bool {
    let n = gens.len();
    for i in 0..n {
        for j in 0..n {
            let want_anticommute = i == j;
            if destabs[i].commutes(&gens[j]).unwrap() == want_anticommute {
                return false;
            }
            if i < j && !destabs[i].commutes(&destabs[j]).unwrap() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;
    use num::Zero;

    fn bell() -> StabilizerTableau {
        StabilizerTableau::from_literals(&["+XX", "+ZZ"]).unwrap()
    }

    #[test]
    fn construction_validation() {
        assert!(bell().generators().len() == 2);
        assert!(matches!(
            StabilizerTableau::from_literals(&["+XX", "-XX"]),
            Err(TableauError::Dependent { index: 1 })
        ));
        assert!(matches!(
            StabilizerTableau::from_literals(&["+XI", "+ZI"]),
            Err(TableauError::NonCommuting { first: 0, second: 1 })
        ));
        assert!(matches!(
            StabilizerTableau::from_literals(&["+iXX", "+ZZ"]),
            Err(TableauError::ImaginarySign { index: 0 })
        ));
        assert!(matches!(
            StabilizerTableau::from_literals(&["+XX"]),
            Err(TableauError::WrongCount { .. })
        ));
    }

    #[test]
    fn zero_state_rows() {
        let t = StabilizerTableau::zero_state(3);
        let lits: Vec<String> = t.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(lits, vec!["+ZII", "+IZI", "+IIZ"]);
        let d = t.z_distribution();
        assert_eq!(d.support_len(), 1);
        assert!(d
            .iter()
            .next()
            .unwrap()
            .0
            .bits_flat()
            .iter()
            .all(|&b| !b));
    }

    #[test]
    fn bell_preparation() {
        let t = StabilizerTableau::zero_state(2)
            .apply_circuit(&CliffordCircuit::new(vec![Gate::H(0), Gate::Cx(0, 1)]))
            .unwrap();
        assert_eq!(t.membership(&PauliOperator::parse("+XX").unwrap()).unwrap(),
            MembershipResult::PlusMember);
        assert_eq!(t.membership(&PauliOperator::parse("+ZZ").unwrap()).unwrap(),
            MembershipResult::PlusMember);
        let empty = t.apply_circuit(&CliffordCircuit::empty()).unwrap();
        assert_eq!(empty, t);
    }

    #[test]
    fn tensor_structure() {
        let z1 = StabilizerTableau::zero_state(1);
        let t = z1.tensor(&z1);
        let lits: Vec<String> = t.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(lits, vec!["+ZI", "+IZ"]);
        let b = bell().tensor(&bell());
        let lits: Vec<String> = b.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(lits, vec!["+XXII", "+ZZII", "+IIXX", "+IIZZ"]);
        // Tensor then measure equals the product of the separate measurements.
        assert_eq!(
            b.z_distribution(),
            bell()
                .z_distribution()
                .product(&bell().z_distribution())
                .flatten_groups()
        );
    }

    #[test]
    fn membership_cases() {
        let t = bell();
        let m = |s: &str| t.membership(&PauliOperator::parse(s).unwrap()).unwrap();
        assert_eq!(m("+ZZ"), MembershipResult::PlusMember);
        assert_eq!(m("-YY"), MembershipResult::PlusMember);
        assert_eq!(m("+YY"), MembershipResult::MinusMember);
        assert_eq!(m("+XZ"), MembershipResult::NonMember);
        assert!(matches!(
            t.membership(&PauliOperator::parse("+iXX").unwrap()),
            Err(TableauError::ImaginaryOperand)
        ));
    }

    #[test]
    fn bell_distribution() {
        let d = bell().z_distribution();
        assert_eq!(d.support_len(), 2);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        for (k, p) in d.iter() {
            let bits = k.bits_flat();
            assert_eq!(bits[0], bits[1]);
            assert_eq!(*p, half);
        }
        assert!(d.is_dyadic());
        assert!(!d.total().is_zero());
    }

    #[test]
    fn ghz_distribution() {
        let c = CliffordCircuit::new(vec![Gate::H(0), Gate::Cx(0, 1), Gate::Cx(0, 2)]);
        let t = StabilizerTableau::zero_state(3).apply_circuit(&c).unwrap();
        let d = t.z_distribution();
        assert_eq!(d.support_len(), 2);
        for (k, _) in d.iter() {
            let bits = k.bits_flat();
            assert!(bits.iter().all(|&b| b == bits[0]));
        }
    }

    #[test]
    fn minus_z_is_one_state() {
        let t = StabilizerTableau::from_literals(&["-Z"]).unwrap();
        let d = t.z_distribution();
        assert_eq!(d.support_len(), 1);
        assert_eq!(d.iter().next().unwrap().0.bits_flat(), vec![true]);
    }
}
