//! The network data model and the exact quantum pipeline producing Clifford
//! network correlations, including mixed stabilizer sources with classical
//! labels.
//!
//! Global qubit layout: source vertices 0..n-1 as declared, then ancilla
//! qubits indexed after all vertices, grouped by party in party order. Party
//! circuits address this global layout.

use crate::circuit::CliffordCircuit;
use crate::dist::{OutcomeDistribution, OutcomeKey, PartyOutput};
use crate::error::NetworkError;
use crate::pauli::PauliOperator;
use crate::stabilizer::StabilizerTableau;
use num::rational::BigRational;
use num::{One, Signed};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// A pure stabilizer source: either an explicit generator list or a
/// preparation circuit applied to |0...0> on the edge's local qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PureSource {
    Generators(Vec<PauliOperator>),
    Preparation(CliffordCircuit),
}

impl PureSource {
    pub fn tableau(&self, width: usize) -> Result<StabilizerTableau, NetworkError> {
        match self {
            PureSource::Generators(gens) => {
                if gens.len() != width || gens.iter().any(|g| g.num_qubits() != width) {
                    return Err(NetworkError::SourceWidthMismatch {
                        edge: String::new(),
                        got: gens.first().map_or(gens.len(), |g| g.num_qubits()),
                        expected: width,
                    });
                }
                Ok(StabilizerTableau::state_from_generators(gens)?)
            }
            PureSource::Preparation(circuit) => {
                if circuit.width() > width {
                    return Err(NetworkError::SourceWidthMismatch {
                        edge: String::new(),
                        got: circuit.width(),
                        expected: width,
                    });
                }
                Ok(StabilizerTableau::zero_state(width).apply_circuit(circuit)?)
            }
        }
    }
}

/// One component of a mixed source: a weight, a pure state, and classical
/// label symbols appended to named parties' outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedComponent {
    pub weight: BigRational,
    pub state: PureSource,
    pub labels: Vec<(String, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Pure(PureSource),
    Mixed(Vec<MixedComponent>),
}

impl Source {
    pub fn is_mixed(&self) -> bool {
        matches!(self, Source::Mixed(_))
    }
}

/// A hyperedge: an ordered set of vertices fed by one source. Qubit j of the
/// source state sits at `vertices[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub vertices: Vec<usize>,
    pub source: Source,
}

/// Classical post-processing: appended symbols looked up from the party's
/// measured bits and the label symbols received so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostMap {
    pub table: BTreeMap<(Vec<bool>, Vec<String>), Vec<String>>,
    /// Path the table was loaded from, kept for printing.
    pub source_path: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Party {
    pub name: String,
    /// Owned vertices in output order.
    pub vertices: Vec<usize>,
    pub ancillas: usize,
    /// Local circuit over the global indices of owned and ancilla qubits.
    pub circuit: CliffordCircuit,
    pub post: Option<PostMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkSpec {
    /// Number of source vertices.
    pub qubits: usize,
    pub edges: Vec<Edge>,
    pub parties: Vec<Party>,
}

impl NetworkSpec {
    pub fn total_ancillas(&self) -> usize {
        self.parties.iter().map(|p| p.ancillas).sum()
    }

    pub fn total_qubits(&self) -> usize {
        self.qubits + self.total_ancillas()
    }

    /// Global indices of party `i`'s ancilla block.
    pub fn ancilla_range(&self, party: usize) -> std::ops::Range<usize> {
        let before: usize = self.parties[..party].iter().map(|p| p.ancillas).sum();
        let start = self.qubits + before;
        start..start + self.parties[party].ancillas
    }

    /// Global qubit indices measured by party `i`, in output order.
    pub fn party_qubits(&self, party: usize) -> Vec<usize> {
        let mut q = self.parties[party].vertices.clone();
        q.extend(self.ancilla_range(party));
        q
    }

    pub fn party_index(&self, name: &str) -> Option<usize> {
        self.parties.iter().position(|p| p.name == name)
    }

    /// Index of the party owning vertex `v`, if any.
    pub fn owner_of(&self, v: usize) -> Option<usize> {
        self.parties.iter().position(|p| p.vertices.contains(&v))
    }

    /// Check every structural invariant; returns k, the largest number of
    /// distinct parties owning a vertex of one edge.
    pub fn validate(&self) -> Result<usize, NetworkError> {
        let mut seen_edge_names = std::collections::BTreeSet::new();
        for e in &self.edges {
            if !seen_edge_names.insert(&e.name) {
                return Err(NetworkError::DuplicateEdgeName {
                    name: e.name.clone(),
                });
            }
        }
        let mut seen_party_names = std::collections::BTreeSet::new();
        for p in &self.parties {
            if !seen_party_names.insert(&p.name) {
                return Err(NetworkError::DuplicatePartyName {
                    name: p.name.clone(),
                });
            }
        }
        // Edges: in range, pairwise disjoint, covering.
        let mut owner_edge: Vec<Option<usize>> = vec![None; self.qubits];
        for (ei, e) in self.edges.iter().enumerate() {
            if e.vertices.is_empty() {
                return Err(NetworkError::EmptyEdge {
                    edge: e.name.clone(),
                });
            }
            for &v in &e.vertices {
                if v >= self.qubits {
                    return Err(NetworkError::VertexOutOfRange {
                        edge: e.name.clone(),
                        vertex: v,
                        qubits: self.qubits,
                    });
                }
                if let Some(prev) = owner_edge[v] {
                    return Err(NetworkError::OverlappingEdges {
                        first: self.edges[prev].name.clone(),
                        second: e.name.clone(),
                        vertex: v,
                    });
                }
                owner_edge[v] = Some(ei);
            }
        }
        if let Some(v) = owner_edge.iter().position(|o| o.is_none()) {
            return Err(NetworkError::UncoveredVertex { vertex: v });
        }
        // Parties: partition of the vertex set.
        let mut owner_party: Vec<Option<usize>> = vec![None; self.qubits];
        for (pi, p) in self.parties.iter().enumerate() {
            for &v in &p.vertices {
                if v >= self.qubits {
                    return Err(NetworkError::VertexOutOfRange {
                        edge: p.name.clone(),
                        vertex: v,
                        qubits: self.qubits,
                    });
                }
                if let Some(prev) = owner_party[v] {
                    return Err(NetworkError::DoublyOwnedVertex {
                        first: self.parties[prev].name.clone(),
                        second: p.name.clone(),
                        vertex: v,
                    });
                }
                owner_party[v] = Some(pi);
            }
        }
        if let Some(v) = owner_party.iter().position(|o| o.is_none()) {
            return Err(NetworkError::UnownedVertex { vertex: v });
        }
        // Circuit scope.
        for (pi, p) in self.parties.iter().enumerate() {
            let scope: std::collections::BTreeSet<usize> =
                self.party_qubits(pi).into_iter().collect();
            for g in p.circuit.gates() {
                for q in g.qubits() {
                    if !scope.contains(&q) {
                        return Err(NetworkError::CircuitOutOfScope {
                            party: p.name.clone(),
                            qubit: q,
                        });
                    }
                }
            }
        }
        // Sources: widths, weights, labels, constructible states.
        for e in &self.edges {
            let width = e.vertices.len();
            let name_err = |err: NetworkError| match err {
                NetworkError::SourceWidthMismatch { got, expected, .. } => {
                    NetworkError::SourceWidthMismatch {
                        edge: e.name.clone(),
                        got,
                        expected,
                    }
                }
                other => other,
            };
            match &e.source {
                Source::Pure(ps) => {
                    ps.tableau(width).map_err(name_err)?;
                }
                Source::Mixed(components) => {
                    let mut sum = BigRational::from_integer(0.into());
                    for c in components {
                        if !c.weight.is_positive() {
                            return Err(NetworkError::BadWeights {
                                edge: e.name.clone(),
                                sum: c.weight.to_string(),
                            });
                        }
                        sum += &c.weight;
                        c.state.tableau(width).map_err(name_err)?;
                        for (party, _) in &c.labels {
                            if self.party_index(party).is_none() {
                                return Err(NetworkError::UnknownLabelParty {
                                    edge: e.name.clone(),
                                    party: party.clone(),
                                });
                            }
                        }
                    }
                    if !sum.is_one() {
                        return Err(NetworkError::BadWeights {
                            edge: e.name.clone(),
                            sum: sum.to_string(),
                        });
                    }
                }
            }
        }
        // k: distinct vertex-owning parties per edge.
        let mut k = 0;
        for e in &self.edges {
            let owners: std::collections::BTreeSet<usize> = e
                .vertices
                .iter()
                .map(|&v| owner_party[v].expect("checked above"))
                .collect();
            k = k.max(owners.len());
        }
        Ok(k)
    }

    /// One choice of pure component per edge, Cartesian over mixed edges.
    fn component_selections(&self) -> Vec<Vec<usize>> {
        let mut selections = vec![Vec::new()];
        for e in &self.edges {
            let count = match &e.source {
                Source::Pure(_) => 1,
                Source::Mixed(cs) => cs.len(),
            };
            let mut next = Vec::with_capacity(selections.len() * count);
            for sel in &selections {
                for c in 0..count {
                    let mut s = sel.clone();
                    s.push(c);
                    next.push(s);
                }
            }
            selections = next;
        }
        selections
    }

    fn component_of<'a>(
        &'a self,
        edge: &'a Edge,
        choice: usize,
    ) -> (BigRational, &'a PureSource, &'a [(String, Vec<String>)]) {
        match &edge.source {
            Source::Pure(ps) => (BigRational::one(), ps, &[]),
            Source::Mixed(cs) => {
                let c = &cs[choice];
                (c.weight.clone(), &c.state, &c.labels)
            }
        }
    }

    /// Run one pure component selection through the stabilizer pipeline.
    fn run_selection(
        &self,
        selection: &[usize],
    ) -> Result<(BigRational, OutcomeDistribution), NetworkError> {
        let total = self.total_qubits();
        let mut weight = BigRational::one();
        let mut gens: Vec<PauliOperator> = Vec::with_capacity(total);
        let mut destabs: Vec<PauliOperator> = Vec::with_capacity(total);
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); self.parties.len()];
        for (e, &choice) in self.edges.iter().zip(selection) {
            let (w, state, lbls) = self.component_of(e, choice);
            weight *= w;
            let t = state.tableau(e.vertices.len())?;
            for g in t.generators() {
                gens.push(g.embed_at(total, &e.vertices));
            }
            for d in t.destabilizers() {
                destabs.push(d.embed_at(total, &e.vertices));
            }
            for (party, symbols) in lbls {
                let pi = self.party_index(party).expect("validated");
                labels[pi].extend(symbols.iter().cloned());
            }
        }
        for pi in 0..self.parties.len() {
            for a in self.ancilla_range(pi) {
                gens.push(PauliOperator::z_on(total, a));
                destabs.push(PauliOperator::x_on(total, a));
            }
        }
        let mut tableau = StabilizerTableau::from_parts(total, gens, destabs);
        for p in &self.parties {
            tableau = tableau.apply_circuit(&p.circuit)?;
        }
        let flat = tableau.z_distribution();
        // Regroup global bits into party outputs; attach labels and posts.
        let qubits_per_party: Vec<Vec<usize>> = (0..self.parties.len())
            .map(|i| self.party_qubits(i))
            .collect();
        let mut entries = BTreeMap::new();
        for (key, prob) in flat.iter() {
            let bits = key.bits_flat();
            let mut groups = Vec::with_capacity(self.parties.len());
            for (pi, party) in self.parties.iter().enumerate() {
                let pbits: Vec<bool> = qubits_per_party[pi].iter().map(|&q| bits[q]).collect();
                let mut symbols = labels[pi].clone();
                if let Some(post) = &party.post {
                    let k = (pbits.clone(), symbols.clone());
                    match post.table.get(&k) {
                        Some(extra) => symbols.extend(extra.iter().cloned()),
                        None => {
                            return Err(NetworkError::PostMapMiss {
                                party: party.name.clone(),
                                key: format!(
                                    "{}:{}",
                                    pbits
                                        .iter()
                                        .map(|&b| if b { '1' } else { '0' })
                                        .collect::<String>(),
                                    symbols.join(",")
                                ),
                            })
                        }
                    }
                }
                groups.push(PartyOutput {
                    bits: pbits,
                    symbols,
                });
            }
            entries.insert(OutcomeKey { groups }, prob.clone());
        }
        let lens = (0..self.parties.len())
            .map(|i| qubits_per_party[i].len())
            .collect();
        Ok((weight, OutcomeDistribution::new(lens, entries)))
    }

    /// Labels received by each party under one component selection.
    pub(crate) fn labels_for_selection(&self, selection: &[usize]) -> Vec<Vec<String>> {
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); self.parties.len()];
        for (e, &choice) in self.edges.iter().zip(selection) {
            let (_, _, lbls) = self.component_of(e, choice);
            for (party, symbols) in lbls {
                let pi = self.party_index(party).expect("validated");
                labels[pi].extend(symbols.iter().cloned());
            }
        }
        labels
    }

    /// Regroup a flat global bit string into the party-grouped outcome key,
    /// attaching labels and applying post maps.
    pub(crate) fn outcome_key_for(
        &self,
        bits: &[bool],
        labels: &[Vec<String>],
    ) -> Result<OutcomeKey, NetworkError> {
        let mut groups = Vec::with_capacity(self.parties.len());
        for (pi, party) in self.parties.iter().enumerate() {
            let pbits: Vec<bool> = self.party_qubits(pi).iter().map(|&q| bits[q]).collect();
            let mut symbols = labels[pi].clone();
            if let Some(post) = &party.post {
                let k = (pbits.clone(), symbols.clone());
                match post.table.get(&k) {
                    Some(extra) => symbols.extend(extra.iter().cloned()),
                    None => {
                        return Err(NetworkError::PostMapMiss {
                            party: party.name.clone(),
                            key: format!(
                                "{}:{}",
                                pbits
                                    .iter()
                                    .map(|&b| if b { '1' } else { '0' })
                                    .collect::<String>(),
                                symbols.join(",")
                            ),
                        })
                    }
                }
            }
            groups.push(PartyOutput {
                bits: pbits,
                symbols,
            });
        }
        Ok(OutcomeKey { groups })
    }

    /// One choice index per edge, in edge order, over all mixed components.
    pub(crate) fn all_selections(&self) -> Vec<Vec<usize>> {
        self.component_selections()
    }

    /// Weight of a component selection (product over mixed edges).
    pub(crate) fn selection_weight(&self, selection: &[usize]) -> BigRational {
        let mut w = BigRational::one();
        for (e, &choice) in self.edges.iter().zip(selection) {
            let (cw, _, _) = self.component_of(e, choice);
            w *= cw;
        }
        w
    }

    /// The pure source of edge `ei` under the given selection.
    pub(crate) fn selected_source(&self, ei: usize, selection: &[usize]) -> &PureSource {
        let (_, ps, _) = self.component_of(&self.edges[ei], selection[ei]);
        ps
    }

    /// The exact outcome distribution of the full quantum pipeline: all
    /// mixture components enumerated, each run through tensoring, local
    /// circuits and terminal measurement, then convex-combined exactly.
    pub fn run_quantum(&self) -> Result<OutcomeDistribution, NetworkError> {
        self.validate()?;
        let selections = self.component_selections();
        let parts: Vec<(BigRational, OutcomeDistribution)> = selections
            .par_iter()
            .map(|sel| self.run_selection(sel))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OutcomeDistribution::mix(&parts))
    }

    /// Per-component final tableaus paired with weights, for debug dumps.
    pub fn component_tableaus(
        &self,
    ) -> Result<Vec<(BigRational, StabilizerTableau)>, NetworkError> {
        self.validate()?;
        let total = self.total_qubits();
        let mut out = Vec::new();
        for sel in self.component_selections() {
            let mut weight = BigRational::one();
            let mut gens = Vec::with_capacity(total);
            let mut destabs = Vec::with_capacity(total);
            for (e, &choice) in self.edges.iter().zip(&sel) {
                let (w, state, _) = self.component_of(e, choice);
                weight *= w;
                let t = state.tableau(e.vertices.len())?;
                for g in t.generators() {
                    gens.push(g.embed_at(total, &e.vertices));
                }
                for d in t.destabilizers() {
                    destabs.push(d.embed_at(total, &e.vertices));
                }
            }
            for pi in 0..self.parties.len() {
                for a in self.ancilla_range(pi) {
                    gens.push(PauliOperator::z_on(total, a));
                    destabs.push(PauliOperator::x_on(total, a));
                }
            }
            let mut tableau = StabilizerTableau::from_parts(total, gens, destabs);
            for p in &self.parties {
                tableau = tableau.apply_circuit(&p.circuit)?;
            }
            out.push((weight, tableau));
        }
        Ok(out)
    }
}

/// Bayes-exact conditioning on flat outcome bit positions; returns the
/// conditional distribution and the probability of the event.
pub fn condition(
    d: &OutcomeDistribution,
    positions: &[usize],
    values: &[bool],
) -> Result<(OutcomeDistribution, BigRational), NetworkError> {
    d.condition(positions, values)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use num::Zero;

    pub(crate) fn bell_source() -> Source {
        Source::Pure(PureSource::Generators(vec![
            PauliOperator::parse("+XX").unwrap(),
            PauliOperator::parse("+ZZ").unwrap(),
        ]))
    }

    pub(crate) fn simple_party(name: &str, vertices: Vec<usize>) -> Party {
        Party {
            name: name.into(),
            vertices,
            ancillas: 0,
            circuit: CliffordCircuit::empty(),
            post: None,
        }
    }

    pub(crate) fn bell_edge_spec() -> NetworkSpec {
        NetworkSpec {
            qubits: 2,
            edges: vec![Edge {
                name: "e0".into(),
                vertices: vec![0, 1],
                source: bell_source(),
            }],
            parties: vec![simple_party("A", vec![0]), simple_party("B", vec![1])],
        }
    }

    pub(crate) fn triangle_spec() -> NetworkSpec {
        let bell = |name: &str, a: usize, b: usize| Edge {
            name: name.into(),
            vertices: vec![a, b],
            source: bell_source(),
        };
        NetworkSpec {
            qubits: 6,
            edges: vec![bell("ab", 0, 2), bell("bc", 3, 4), bell("ca", 5, 1)],
            parties: vec![
                simple_party("A", vec![0, 1]),
                simple_party("B", vec![2, 3]),
                simple_party("C", vec![4, 5]),
            ],
        }
    }

    #[test]
    fn validate_k_values() {
        assert_eq!(triangle_spec().validate().unwrap(), 2);
        let ghz = NetworkSpec {
            qubits: 3,
            edges: vec![Edge {
                name: "g".into(),
                vertices: vec![0, 1, 2],
                source: Source::Pure(PureSource::Generators(vec![
                    PauliOperator::parse("+XXX").unwrap(),
                    PauliOperator::parse("+ZZI").unwrap(),
                    PauliOperator::parse("+IZZ").unwrap(),
                ])),
            }],
            parties: (0..3).map(|i| simple_party(&format!("P{}", i), vec![i])).collect(),
        };
        assert_eq!(ghz.validate().unwrap(), 3);
    }

    #[test]
    fn validate_overlap_error() {
        let mut spec = triangle_spec();
        spec.edges[1].vertices = vec![2, 4];
        let err = spec.validate().unwrap_err();
        assert!(matches!(err, NetworkError::OverlappingEdges { vertex: 2, .. }));
    }

    #[test]
    fn validate_scope_error() {
        let mut spec = bell_edge_spec();
        spec.parties[0].circuit = CliffordCircuit::parse("H 1").unwrap();
        assert!(matches!(
            spec.validate().unwrap_err(),
            NetworkError::CircuitOutOfScope { qubit: 1, .. }
        ));
    }

    #[test]
    fn bell_run() {
        let d = bell_edge_spec().run_quantum().unwrap();
        assert_eq!(d.support_len(), 2);
        assert_eq!(d.group_bit_lens(), &[1, 1]);
        for (k, p) in d.iter() {
            let bits = k.bits_flat();
            assert_eq!(bits[0], bits[1]);
            assert_eq!(*p, BigRational::new(1.into(), 2.into()));
        }
    }

    #[test]
    fn triangle_run_is_product() {
        let d = triangle_spec().run_quantum().unwrap();
        assert_eq!(d.support_len(), 8);
        let w = BigRational::new(1.into(), 8.into());
        for (_, p) in d.iter() {
            assert_eq!(*p, w);
        }
        assert!(d.total().is_one());
    }

    #[test]
    fn mixed_source_mixes_exactly() {
        let third = BigRational::new(1.into(), 3.into());
        let two_thirds = BigRational::new(2.into(), 3.into());
        let spec = NetworkSpec {
            qubits: 1,
            edges: vec![Edge {
                name: "m".into(),
                vertices: vec![0],
                source: Source::Mixed(vec![
                    MixedComponent {
                        weight: third.clone(),
                        state: PureSource::Generators(vec![
                            PauliOperator::parse("+Z").unwrap()
                        ]),
                        labels: vec![("P".into(), vec!["a".into()])],
                    },
                    MixedComponent {
                        weight: two_thirds.clone(),
                        state: PureSource::Generators(vec![
                            PauliOperator::parse("-Z").unwrap()
                        ]),
                        labels: vec![("P".into(), vec!["b".into()])],
                    },
                ]),
            }],
            parties: vec![simple_party("P", vec![0])],
        };
        let d = spec.run_quantum().unwrap();
        assert_eq!(d.support_len(), 2);
        for (k, p) in d.iter() {
            let g = &k.groups[0];
            if g.bits == vec![false] {
                assert_eq!(g.symbols, vec!["a".to_string()]);
                assert_eq!(*p, third);
            } else {
                assert_eq!(g.symbols, vec!["b".to_string()]);
                assert_eq!(*p, two_thirds);
            }
        }
        assert!(!d.is_dyadic());
        assert!(!d.total().is_zero());
    }

    #[test]
    fn ancilla_layout_and_circuits() {
        let mut spec = bell_edge_spec();
        spec.parties[0].ancillas = 1;
        // Party A's ancilla is global qubit 2; flip it to |1>.
        spec.parties[0].circuit = CliffordCircuit::parse("X 2").unwrap();
        let d = spec.run_quantum().unwrap();
        assert_eq!(d.group_bit_lens(), &[2, 1]);
        for (k, _) in d.iter() {
            assert!(k.groups[0].bits[1]);
        }
    }

    #[test]
    fn disconnected_groups_factorize() {
        let bell = |name: &str, a: usize, b: usize| Edge {
            name: name.into(),
            vertices: vec![a, b],
            source: bell_source(),
        };
        let spec = NetworkSpec {
            qubits: 4,
            edges: vec![bell("e0", 0, 1), bell("e1", 2, 3)],
            parties: vec![
                simple_party("A", vec![0]),
                simple_party("B", vec![1]),
                simple_party("C", vec![2]),
                simple_party("D", vec![3]),
            ],
        };
        let d = spec.run_quantum().unwrap();
        let left = d.marginal_groups(&[0, 1]);
        let right = d.marginal_groups(&[2, 3]);
        assert_eq!(left.product(&right), d);
    }

    #[test]
    fn single_party_marginal_uniform() {
        let d = bell_edge_spec().run_quantum().unwrap();
        let m = d.marginal_groups(&[0]);
        let half = BigRational::new(1.into(), 2.into());
        for (_, p) in m.iter() {
            assert_eq!(*p, half);
        }
    }
}
