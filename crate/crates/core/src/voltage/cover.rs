use std::collections::{BTreeSet, HashSet};

use super::graph::Graph;
use crate::error::{Error, Result};

/// An arc of a voltage graph. A loop has `tail == head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VoltageArc {
    pub tail: usize,
    pub head: usize,
    pub voltage: u64,
}

/// Base multigraph with `Z_n` voltages on its arcs.
///
/// Cover vertex `(v, j)` is laid out at index `v * n + j`, so each base
/// vertex becomes a contiguous orbit block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageGraph {
    base_vertex_count: usize,
    modulus: u64,
    arcs: Vec<VoltageArc>,
}

impl VoltageGraph {
    pub fn new(base_vertex_count: usize, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidVoltageGraph(
                "modulus must be positive".into(),
            ));
        }
        if base_vertex_count == 0 {
            return Err(Error::InvalidVoltageGraph(
                "base graph needs at least one vertex".into(),
            ));
        }
        Ok(VoltageGraph {
            base_vertex_count,
            modulus,
            arcs: Vec::new(),
        })
    }

    /// Adds an arc. Loops with voltage 0 are rejected since they would
    /// lift to self-loops.
    pub fn add_arc(&mut self, tail: usize, head: usize, voltage: u64) -> Result<&mut Self> {
        if tail >= self.base_vertex_count || head >= self.base_vertex_count {
            return Err(Error::InvalidVoltageGraph(format!(
                "arc ({tail}, {head}) out of range for {} base vertices",
                self.base_vertex_count
            )));
        }
        if voltage >= self.modulus {
            return Err(Error::InvalidVoltageGraph(format!(
                "voltage {voltage} not in [0, {})",
                self.modulus
            )));
        }
        if tail == head && voltage == 0 {
            return Err(Error::InvalidVoltageGraph(format!(
                "loop at base vertex {tail} has voltage 0"
            )));
        }
        self.arcs.push(VoltageArc {
            tail,
            head,
            voltage,
        });
        Ok(self)
    }

    /// Same as [`VoltageGraph::add_arc`] with the voltage reduced mod `n` first.
    pub fn add_arc_signed(&mut self, tail: usize, head: usize, voltage: i64) -> Result<&mut Self> {
        let v = voltage.rem_euclid(self.modulus as i64) as u64;
        self.add_arc(tail, head, v)
    }

    pub fn base_vertex_count(&self) -> usize {
        self.base_vertex_count
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn arcs(&self) -> &[VoltageArc] {
        &self.arcs
    }

    /// Index of cover vertex `(base, j)`.
    pub fn lift_index(&self, base: usize, j: u64) -> usize {
        base * self.modulus as usize + (j % self.modulus) as usize
    }

    /// Expands into the cyclic cover.
    ///
    /// A non-loop arc `(u, v, g)` yields `{u_j, v_{j+g}}` for every `j`; a
    /// loop `(v, v, g)` yields `{v_j, v_{j+g}}` with each edge produced
    /// once (so a loop of voltage `n/2` lifts to a perfect matching on its
    /// fibre). Two arcs inducing a common edge are an error.
    pub fn expand_cyclic_cover(&self) -> Result<Graph> {
        let n = self.modulus;
        let order = self.base_vertex_count * n as usize;
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut edges = Vec::new();
        for (idx, arc) in self.arcs.iter().enumerate() {
            let mut lifted = BTreeSet::new();
            for j in 0..n {
                let u = self.lift_index(arc.tail, j);
                let w = self.lift_index(arc.head, j + arc.voltage);
                if u == w {
                    return Err(Error::CoverNotSimple(format!(
                        "arc {idx} lifts to a self-loop at vertex {u}"
                    )));
                }
                lifted.insert((u.min(w), u.max(w)));
            }
            for e in lifted {
                if !seen.insert(e) {
                    return Err(Error::CoverNotSimple(format!(
                        "arc {idx} ({} -> {}, voltage {}) duplicates edge {:?}",
                        arc.tail, arc.head, arc.voltage, e
                    )));
                }
                edges.push(e);
            }
        }
        Graph::from_edges(order, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc_gives_matching() {
        let mut vg = VoltageGraph::new(2, 4).unwrap();
        vg.add_arc(0, 1, 0).unwrap();
        let g = vg.expand_cyclic_cover().unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 4);
        assert!((0..8).all(|v| g.degree(v) == 1));
    }

    #[test]
    fn loop_gives_cycle() {
        let mut vg = VoltageGraph::new(1, 5).unwrap();
        vg.add_arc(0, 0, 1).unwrap();
        let g = vg.expand_cyclic_cover().unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 5);
        assert!(g.is_connected());
        assert!((0..5).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn half_turn_loop_is_matching() {
        let mut vg = VoltageGraph::new(1, 6).unwrap();
        vg.add_arc(0, 0, 3).unwrap();
        let g = vg.expand_cyclic_cover().unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.edges(), vec![(0, 3), (1, 4), (2, 5)]);
    }

    #[test]
    fn invalid_arcs_rejected() {
        let mut vg = VoltageGraph::new(2, 4).unwrap();
        assert!(vg.add_arc(0, 0, 0).is_err());
        assert!(vg.add_arc(0, 1, 4).is_err());
        assert!(vg.add_arc(0, 2, 1).is_err());
        assert!(VoltageGraph::new(1, 0).is_err());
    }

    #[test]
    fn parallel_lift_rejected() {
        let mut vg = VoltageGraph::new(2, 4).unwrap();
        vg.add_arc(0, 1, 1).unwrap();
        vg.add_arc(1, 0, 3).unwrap();
        assert!(matches!(
            vg.expand_cyclic_cover(),
            Err(Error::CoverNotSimple(_))
        ));

        let mut vg = VoltageGraph::new(1, 5).unwrap();
        vg.add_arc(0, 0, 2).unwrap();
        vg.add_arc(0, 0, 3).unwrap();
        assert!(vg.expand_cyclic_cover().is_err());
    }

    #[test]
    fn loop_with_modulus_one_or_two() {
        // n = 1: every loop voltage is 0, rejected up front.
        let mut vg = VoltageGraph::new(1, 1).unwrap();
        assert!(vg.add_arc(0, 0, 0).is_err());
        let mut vg = VoltageGraph::new(1, 2).unwrap();
        vg.add_arc(0, 0, 1).unwrap();
        assert_eq!(vg.expand_cyclic_cover().unwrap().edges(), vec![(0, 1)]);
    }

    #[test]
    fn signed_voltage_reduced() {
        let mut vg = VoltageGraph::new(2, 6).unwrap();
        vg.add_arc_signed(0, 1, -1).unwrap();
        assert_eq!(vg.arcs()[0].voltage, 5);
    }
}
