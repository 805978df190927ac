//! Scene graph: objects with geometry plus a set of grounded relations.
//!
//! This is the executor's world model. Spatial relations are derived from
//! geometry by [`eval_spatial`]; action effects and observation-driven
//! corrections keep the relation set synchronized with reality.

use crate::geometry::{Aabb, Vec3};
use crate::pddl::{GroundAction, GroundAtom, SymbolicState};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SceneError {
    #[error("relation references unknown object `{0}`")]
    UnknownObject(String),
    #[error("object {id} has invalid geometry: {reason}")]
    BadGeometry { id: String, reason: String },
    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),
}

/// One perceived object: identifier, category label, centroid, bounding
/// box, and an optional opaque embedding vector that the simulator carries
/// but never interprets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneObject {
    pub id: String,
    pub category: String,
    pub centroid: Vec3,
    pub bbox: Aabb,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Vec<f32>>,
}

impl SceneObject {
    pub fn new(id: impl Into<String>, category: impl Into<String>, centroid: Vec3, bbox: Aabb) -> Result<Self, SceneError> {
        let id = id.into();
        if !bbox.is_valid() {
            return Err(SceneError::BadGeometry { id, reason: "bbox min exceeds max or non-finite".into() });
        }
        if !centroid.is_finite() || !bbox.contains_point(&centroid) {
            return Err(SceneError::BadGeometry { id, reason: "centroid outside bbox".into() });
        }
        Ok(SceneObject { id, category: category.into(), centroid, bbox, embedding: None })
    }

    /// Move the object so its centroid lands on `to`, translating the box.
    pub fn relocated(&self, to: Vec3) -> SceneObject {
        let d = Vec3::new(to.x - self.centroid.x, to.y - self.centroid.y, to.z - self.centroid.z);
        SceneObject {
            bbox: Aabb::new(
                Vec3::new(self.bbox.min.x + d.x, self.bbox.min.y + d.y, self.bbox.min.z + d.z),
                Vec3::new(self.bbox.max.x + d.x, self.bbox.max.y + d.y, self.bbox.max.z + d.z),
            ),
            centroid: to,
            ..self.clone()
        }
    }
}

/// Geometric thresholds for spatial predicate extraction. The paper-style
/// rules say "within a threshold" without values; these defaults are
/// configurable per scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpatialThresholds {
    /// Max vertical gap between a centroid and the support's top face.
    pub on_max_gap: f64,
    /// Min fraction of the upper object's footprint overlapping the support.
    pub on_min_overlap: f64,
    /// Max centroid distance for `near`.
    pub near_max_dist: f64,
}

impl Default for SpatialThresholds {
    fn default() -> Self {
        SpatialThresholds { on_max_gap: 0.10, on_min_overlap: 0.5, near_max_dist: 1.0 }
    }
}

/// Extract the spatial relation set from geometry. Pure and deterministic:
/// the same objects and thresholds always yield the same atoms.
///
/// Rules, for each ordered pair `(a, b)` with `a != b`:
/// - `on(a, b)`: `a`'s centroid sits above `b`'s top face within
///   `on_max_gap`, with at least `on_min_overlap` of `a`'s footprint over
///   `b`'s.
/// - `inside(a, b)`: `a`'s bounding box is contained in `b`'s.
/// - `near(a, b)`: centroid distance at most `near_max_dist`.
pub fn eval_spatial<'a>(
    objects: impl IntoIterator<Item = &'a SceneObject> + Clone,
    thresholds: &SpatialThresholds,
) -> BTreeSet<GroundAtom> {
    let objs: Vec<&SceneObject> = objects.into_iter().collect();
    let mut out = BTreeSet::new();
    for a in &objs {
        for b in &objs {
            if a.id == b.id {
                continue;
            }
            let gap = a.centroid.z - b.bbox.top_z();
            if gap >= 0.0 && gap <= thresholds.on_max_gap {
                let area = a.bbox.footprint_area();
                let overlapping = if area > 1e-9 {
                    a.bbox.footprint_overlap(&b.bbox) / area >= thresholds.on_min_overlap
                } else {
                    // Degenerate footprint: fall back to the centroid.
                    a.centroid.x >= b.bbox.min.x
                        && a.centroid.x <= b.bbox.max.x
                        && a.centroid.y >= b.bbox.min.y
                        && a.centroid.y <= b.bbox.max.y
                };
                if overlapping {
                    out.insert(GroundAtom::new("on", &[&a.id, &b.id]));
                }
            }
            if b.bbox.contains_box(&a.bbox) {
                out.insert(GroundAtom::new("inside", &[&a.id, &b.id]));
            }
            if a.centroid.distance(&b.centroid) <= thresholds.near_max_dist {
                out.insert(GroundAtom::new("near", &[&a.id, &b.id]));
            }
        }
    }
    out
}

/// The scene graph proper: objects keyed by id, a relation set, and a
/// monotone version counter bumped on every mutating update.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SceneGraph {
    objects: BTreeMap<String, SceneObject>,
    relations: BTreeSet<GroundAtom>,
    version: u64,
}

impl SceneGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub fn objects(&self) -> &BTreeMap<String, SceneObject> {
        &self.objects
    }

    pub fn object(&self, id: &str) -> Option<&SceneObject> {
        self.objects.get(id)
    }

    pub fn relations(&self) -> &BTreeSet<GroundAtom> {
        &self.relations
    }

    pub fn contains_relation(&self, atom: &GroundAtom) -> bool {
        self.relations.contains(atom)
    }

    pub fn insert_object(&mut self, object: SceneObject) -> Result<(), SceneError> {
        if self.objects.contains_key(&object.id) {
            return Err(SceneError::DuplicateObject(object.id));
        }
        self.objects.insert(object.id.clone(), object);
        self.version += 1;
        Ok(())
    }

    /// Replace the stored geometry of an already-known object.
    pub fn update_object(&mut self, object: SceneObject) -> Result<(), SceneError> {
        if !self.objects.contains_key(&object.id) {
            return Err(SceneError::UnknownObject(object.id));
        }
        self.objects.insert(object.id.clone(), object);
        self.version += 1;
        Ok(())
    }

    fn check_atom_objects(&self, atom: &GroundAtom) -> Result<(), SceneError> {
        for arg in &atom.args {
            if !self.objects.contains_key(arg) {
                return Err(SceneError::UnknownObject(arg.clone()));
            }
        }
        Ok(())
    }

    /// Seed the relation set without version bookkeeping semantics beyond
    /// a single bump; used when constructing the initial graph.
    pub fn set_relations(&mut self, relations: BTreeSet<GroundAtom>) {
        self.relations = relations;
        self.version += 1;
    }

    pub fn insert_relation(&mut self, atom: GroundAtom) -> Result<(), SceneError> {
        self.check_atom_objects(&atom)?;
        self.relations.insert(atom);
        self.version += 1;
        Ok(())
    }

    /// Action-driven update: remove the action's delete effects, insert its
    /// add effects, bump the version. Mirrors the planner's `apply` on the
    /// shared atom vocabulary.
    pub fn apply_effects(&mut self, action: &GroundAction) -> Result<(), SceneError> {
        for atom in action.add_effects.iter().chain(action.del_effects.iter()) {
            for arg in &atom.args {
                if !self.objects.contains_key(arg) {
                    return Err(SceneError::UnknownObject(arg.clone()));
                }
            }
        }
        for atom in &action.del_effects {
            self.relations.remove(atom);
        }
        for atom in &action.add_effects {
            self.relations.insert(atom.clone());
        }
        self.version += 1;
        Ok(())
    }

    /// Observation-driven update: force `atom`'s membership to `verdict`.
    /// The version is bumped only when membership actually changed, so
    /// `correct` is idempotent.
    pub fn correct(&mut self, atom: &GroundAtom, verdict: bool) -> Result<bool, SceneError> {
        self.check_atom_objects(atom)?;
        let changed = if verdict {
            self.relations.insert(atom.clone())
        } else {
            self.relations.remove(atom)
        };
        if changed {
            self.version += 1;
        }
        Ok(changed)
    }

    /// Re-derive the spatial atoms among `visible` objects from their
    /// freshly observed geometry, leaving relations that mention any
    /// non-visible object untouched.
    pub fn refresh_spatial(
        &mut self,
        observed: &[SceneObject],
        thresholds: &SpatialThresholds,
    ) -> Result<(), SceneError> {
        let visible: BTreeSet<&str> = observed.iter().map(|o| o.id.as_str()).collect();
        for obj in observed {
            if self.objects.contains_key(&obj.id) {
                self.objects.insert(obj.id.clone(), obj.clone());
            } else {
                // Newly discovered object.
                self.objects.insert(obj.id.clone(), obj.clone());
            }
        }
        let spatial = ["on", "inside", "near"];
        self.relations.retain(|atom| {
            if !spatial.contains(&atom.predicate.as_str()) {
                return true;
            }
            // Drop stale spatial atoms fully observable right now.
            !atom.args.iter().all(|a| visible.contains(a.as_str()))
        });
        let fresh = eval_spatial(observed.iter(), thresholds);
        self.relations.extend(fresh);
        self.version += 1;
        Ok(())
    }

    /// Export the planner's initial state: relation set unioned with the
    /// caller-supplied robot-status atoms.
    pub fn to_initial_state(&self, extra: impl IntoIterator<Item = GroundAtom>) -> SymbolicState {
        let mut state = SymbolicState::from_atoms(self.relations.iter().cloned());
        for atom in extra {
            state.insert(atom);
        }
        state
    }

    /// Human-readable serialization used for debugging, fixtures, and as
    /// the observation reference in the external backend protocol.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "scenegraph version={}", self.version);
        for obj in self.objects.values() {
            let _ = writeln!(
                out,
                "object {} category={} centroid=({:.3},{:.3},{:.3}) bbox=({:.3},{:.3},{:.3})..({:.3},{:.3},{:.3})",
                obj.id,
                obj.category,
                obj.centroid.x,
                obj.centroid.y,
                obj.centroid.z,
                obj.bbox.min.x,
                obj.bbox.min.y,
                obj.bbox.min.z,
                obj.bbox.max.x,
                obj.bbox.max.y,
                obj.bbox.max.z,
            );
        }
        for rel in &self.relations {
            let _ = writeln!(out, "relation {rel}");
        }
        out
    }
}
