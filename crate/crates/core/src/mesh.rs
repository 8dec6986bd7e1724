//! Tetrahedral mesh with a face-adjacency index.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geom::{exact_sum, tetra_volume6, Point3, Sign, Tetra, VertexId, VertexStore};

/// Identifier of a tetrahedron. Identifiers are handed out monotonically and never reused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TetId(pub usize);

impl fmt::Display for TetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Where a mesh vertex came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    Exterior,
    Interior,
    Steiner,
}

impl Origin {
    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Exterior => "exterior",
            Origin::Interior => "interior",
            Origin::Steiner => "steiner",
        }
    }

    pub fn parse(s: &str) -> Option<Origin> {
        match s {
            "exterior" => Some(Origin::Exterior),
            "interior" => Some(Origin::Interior),
            "steiner" => Some(Origin::Steiner),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeshVertex {
    pub point: Point3,
    pub origin: Origin,
}

/// Vertex store, tetrahedra and the face index (sorted vertex triple to incident tetrahedra).
#[derive(Clone, Debug, Default)]
pub struct TetMesh {
    vertices: Vec<MeshVertex>,
    tets: Vec<Option<Tetra>>,
    faces: BTreeMap<[VertexId; 3], Vec<TetId>>,
    live: usize,
}

impl VertexStore for TetMesh {
    fn point(&self, v: VertexId) -> &Point3 {
        &self.vertices[v].point
    }
}

impl TetMesh {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, point: Point3, origin: Origin) -> VertexId {
        self.vertices.push(MeshVertex { point, origin });
        self.vertices.len() - 1
    }

    pub fn vertex(&self, v: VertexId) -> &MeshVertex {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[MeshVertex] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn steiner_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.origin == Origin::Steiner).count()
    }

    /// Inserts a tetrahedron, reordering it to positive orientation.
    pub fn insert(&mut self, t: Tetra) -> Result<TetId> {
        let t = match t.orientation(self) {
            Sign::Positive => t,
            Sign::Negative => t.flipped(),
            Sign::Zero => return Err(Error::GeneralPosition(format!("degenerate tetrahedron {:?}", t.0))),
        };
        self.insert_oriented(t)
    }

    /// Inserts a tetrahedron exactly as given; the caller guarantees its orientation.
    pub fn insert_oriented(&mut self, t: Tetra) -> Result<TetId> {
        let id = TetId(self.tets.len());
        for face in t.faces() {
            let count = self.faces.get(&face).map_or(0, Vec::len);
            if count >= 2 {
                return Err(Error::FaceInconsistency { face, count: count + 1 });
            }
        }
        for face in t.faces() {
            self.faces.entry(face).or_default().push(id);
        }
        self.tets.push(Some(t));
        self.live += 1;
        Ok(id)
    }

    pub fn remove(&mut self, id: TetId) -> Result<Tetra> {
        let t = self
            .tets
            .get_mut(id.0)
            .and_then(Option::take)
            .ok_or_else(|| Error::Internal(format!("tetrahedron {id} is not live")))?;
        for face in t.faces() {
            if let Some(list) = self.faces.get_mut(&face) {
                list.retain(|&x| x != id);
                if list.is_empty() {
                    self.faces.remove(&face);
                }
            }
        }
        self.live -= 1;
        Ok(t)
    }

    pub fn tet(&self, id: TetId) -> Option<&Tetra> {
        self.tets.get(id.0).and_then(Option::as_ref)
    }

    pub fn is_live(&self, id: TetId) -> bool {
        self.tet(id).is_some()
    }

    pub fn num_live(&self) -> usize {
        self.live
    }

    /// Number of identifiers handed out so far, live or not.
    pub fn id_bound(&self) -> usize {
        self.tets.len()
    }

    /// Live tetrahedra in ascending identifier order.
    pub fn live(&self) -> impl Iterator<Item = (TetId, &Tetra)> + '_ {
        self.tets
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.as_ref().map(|t| (TetId(i), t)))
    }

    pub fn live_ids(&self) -> Vec<TetId> {
        self.live().map(|(id, _)| id).collect()
    }

    /// Tetrahedra incident to a face given as a sorted triple.
    pub fn face_tets(&self, face: &[VertexId; 3]) -> &[TetId] {
        self.faces.get(face).map_or(&[], Vec::as_slice)
    }

    /// All faces with their incident tetrahedra, in ascending face order.
    pub fn faces(&self) -> impl Iterator<Item = (&[VertexId; 3], &[TetId])> + '_ {
        self.faces.iter().map(|(f, t)| (f, t.as_slice()))
    }

    pub fn boundary_faces(&self) -> impl Iterator<Item = &[VertexId; 3]> + '_ {
        self.faces.iter().filter(|(_, t)| t.len() == 1).map(|(f, _)| f)
    }

    /// The tetrahedron across the face opposite corner `i` of `id`.
    pub fn neighbor_across(&self, id: TetId, i: usize) -> Option<TetId> {
        let t = self.tet(id)?;
        self.face_tets(&t.face(i)).iter().copied().find(|&x| x != id)
    }

    pub fn neighbors(&self, id: TetId) -> Vec<TetId> {
        (0..4).filter_map(|i| self.neighbor_across(id, i)).collect()
    }

    /// The face shared by two live tetrahedra, if they share one.
    pub fn shared_face(&self, a: TetId, b: TetId) -> Option<[VertexId; 3]> {
        let (ta, tb) = (self.tet(a)?, self.tet(b)?);
        if a == b {
            return None;
        }
        let mut common: Vec<VertexId> = ta.0.iter().copied().filter(|v| tb.contains_vertex(*v)).collect();
        if common.len() != 3 {
            return None;
        }
        common.sort_unstable();
        Some([common[0], common[1], common[2]])
    }

    pub fn adjacent(&self, a: TetId, b: TetId) -> bool {
        self.shared_face(a, b).is_some()
    }

    pub fn volume6(&self, id: TetId) -> BigRational {
        self.tet(id).map_or_else(BigRational::zero, |t| tetra_volume6(t, self))
    }

    /// Exact sum of six times the volume over live tetrahedra.
    pub fn total_volume6(&self) -> BigRational {
        exact_sum(self.live().map(|(_, t)| tetra_volume6(t, self)))
    }

    /// Rebuilds a mesh from serialized parts; identifiers are preserved.
    pub fn from_parts(vertices: Vec<MeshVertex>, tets: Vec<(TetId, Tetra)>) -> Result<Self> {
        let mut mesh = TetMesh {
            vertices,
            ..Default::default()
        };
        let mut tets = tets;
        tets.sort_unstable_by_key(|(id, _)| *id);
        for (id, t) in tets {
            if id.0 < mesh.tets.len() {
                return Err(Error::Internal(format!("duplicate tetrahedron id {id}")));
            }
            if t.0.iter().any(|&v| v >= mesh.vertices.len()) {
                return Err(Error::Internal(format!("tetrahedron {id} references a missing vertex")));
            }
            mesh.tets.resize(id.0, None);
            mesh.insert_oriented(t)?;
        }
        Ok(mesh)
    }
}
