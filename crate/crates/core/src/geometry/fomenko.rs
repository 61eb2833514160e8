use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AtomKind {
    A,
    AStar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Atom {
    pub kind: AtomKind,
    /// The singular leaf the atom sits on.
    pub label: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub r: Rational64,
    pub epsilon: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Family {
    pub atoms: Vec<usize>,
    pub n: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FomenkoGraph {
    pub atoms: Vec<Atom>,
    pub edges: Vec<Edge>,
    pub families: Vec<Family>,
}

type Shape = (Vec<AtomKind>, Vec<(AtomKind, AtomKind, Rational64, i8)>, Vec<(Vec<AtomKind>, i64)>);

impl FomenkoGraph {
    fn shape(&self) -> Shape {
        let kind = |i: usize| self.atoms[i].kind;
        let mut atoms: Vec<_> = self.atoms.iter().map(|a| a.kind).collect();
        atoms.sort();
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (kind(e.from), kind(e.to));
                (a.min(b), a.max(b), e.r, e.epsilon)
            })
            .collect();
        edges.sort();
        let mut families: Vec<_> = self
            .families
            .iter()
            .map(|f| {
                let mut k: Vec<_> = f.atoms.iter().map(|&i| kind(i)).collect();
                k.sort();
                (k, f.n)
            })
            .collect();
        families.sort();
        (atoms, edges, families)
    }

    /// Equal as marked graphs, ignoring atom labels and ordering.
    ///
    /// Only meaningful for the small trees produced here, where atom kinds
    /// determine the structure.
    pub fn same_structure(&self, other: &FomenkoGraph) -> bool {
        self.shape() == other.shape()
    }
}

impl fmt::Display for FomenkoGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            let kind = match a.kind {
                AtomKind::A => "A",
                AtomKind::AStar => "A*",
            };
            writeln!(f, "[{i}] {kind}  ({})", a.label)?;
        }
        for e in &self.edges {
            writeln!(f, "[{}] --(r={}, eps={})-- [{}]", e.from, e.r, e.epsilon, e.to)?;
        }
        for fam in &self.families {
            let ids: Vec<String> = fam.atoms.iter().map(|i| format!("[{i}]")).collect();
            writeln!(f, "family {{{}}}: n={}", ids.join(" "), fam.n)?;
        }
        Ok(())
    }
}

fn atom(kind: AtomKind, label: &'static str) -> Atom {
    Atom { kind, label }
}

fn edge(from: usize, to: usize) -> Edge {
    Edge {
        from,
        to,
        r: Rational64::from_integer(0),
        epsilon: 1,
    }
}

/// The marked graph of the isoenergy manifold at energy `E`.
///
/// Defined on `(−1, −1/2)` and `(−1/2, 0)`; the endpoints are rejected.
pub fn fomenko_graph(energy: f64) -> Result<FomenkoGraph> {
    if !(energy > -1.0 && energy < 0.0) || energy == -0.5 {
        return Err(Error::UnsupportedEnergy(energy));
    }
    Ok(if energy < -0.5 {
        FomenkoGraph {
            atoms: vec![atom(AtomKind::A, "D + 2E = 0"), atom(AtomKind::A, "D = 2")],
            edges: vec![edge(0, 1)],
            families: vec![],
        }
    } else {
        FomenkoGraph {
            atoms: vec![
                atom(AtomKind::AStar, "D = 2"),
                atom(AtomKind::A, "1 + 2DE + 4E^2 = 0"),
                atom(AtomKind::A, "D + 2E = 0"),
            ],
            edges: vec![edge(0, 1), edge(0, 2)],
            families: vec![Family { atoms: vec![0], n: 0 }],
        }
    })
}

/// The graph of the billiard inside a half-ellipse cut along an axis.
pub fn half_ellipse_billiard() -> FomenkoGraph {
    FomenkoGraph {
        atoms: vec![
            atom(AtomKind::A, "bouncing along the cut"),
            atom(AtomKind::AStar, "orbits through the foci"),
            atom(AtomKind::A, "motion along the boundary arc"),
        ],
        edges: vec![edge(1, 2), edge(0, 1)],
        families: vec![Family { atoms: vec![1], n: 0 }],
    }
}
