//! Minimal 3D primitives shared by the scene graph and the simulator.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn distance(&self, other: &Vec3) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    pub fn horizontal_distance(&self, other: &Vec3) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(v: [f64; 3]) -> Self {
        Vec3::new(v[0], v[1], v[2])
    }
}

/// Axis-aligned bounding box, `min` and `max` corner per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Aabb {
    pub min: Vec3,
    pub max: Vec3,
}

impl Aabb {
    pub fn new(min: Vec3, max: Vec3) -> Self {
        Aabb { min, max }
    }

    /// Box of the given edge lengths centered on `c`.
    pub fn centered(c: Vec3, size: Vec3) -> Self {
        let h = Vec3::new(size.x / 2.0, size.y / 2.0, size.z / 2.0);
        Aabb {
            min: Vec3::new(c.x - h.x, c.y - h.y, c.z - h.z),
            max: Vec3::new(c.x + h.x, c.y + h.y, c.z + h.z),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.min.is_finite()
            && self.max.is_finite()
            && self.min.x <= self.max.x
            && self.min.y <= self.max.y
            && self.min.z <= self.max.z
    }

    pub fn center(&self) -> Vec3 {
        Vec3::new(
            (self.min.x + self.max.x) / 2.0,
            (self.min.y + self.max.y) / 2.0,
            (self.min.z + self.max.z) / 2.0,
        )
    }

    pub fn size(&self) -> Vec3 {
        Vec3::new(
            self.max.x - self.min.x,
            self.max.y - self.min.y,
            self.max.z - self.min.z,
        )
    }

    /// Top face height, the support surface for `on` evaluation.
    pub fn top_z(&self) -> f64 {
        self.max.z
    }

    pub fn contains_point(&self, p: &Vec3) -> bool {
        p.x >= self.min.x
            && p.x <= self.max.x
            && p.y >= self.min.y
            && p.y <= self.max.y
            && p.z >= self.min.z
            && p.z <= self.max.z
    }

    pub fn contains_box(&self, other: &Aabb) -> bool {
        self.min.x <= other.min.x
            && self.min.y <= other.min.y
            && self.min.z <= other.min.z
            && self.max.x >= other.max.x
            && self.max.y >= other.max.y
            && self.max.z >= other.max.z
    }

    pub fn intersects(&self, other: &Aabb) -> bool {
        self.min.x <= other.max.x
            && self.max.x >= other.min.x
            && self.min.y <= other.max.y
            && self.max.y >= other.min.y
            && self.min.z <= other.max.z
            && self.max.z >= other.min.z
    }

    /// Area of the xy footprint.
    pub fn footprint_area(&self) -> f64 {
        (self.max.x - self.min.x) * (self.max.y - self.min.y)
    }

    /// Area of the xy overlap between two footprints.
    pub fn footprint_overlap(&self, other: &Aabb) -> f64 {
        let w = (self.max.x.min(other.max.x) - self.min.x.max(other.min.x)).max(0.0);
        let d = (self.max.y.min(other.max.y) - self.min.y.max(other.min.y)).max(0.0);
        w * d
    }

    /// Whether the segment `a -> b` passes through this box (slab test).
    pub fn intersects_segment(&self, a: &Vec3, b: &Vec3) -> bool {
        let d = Vec3::new(b.x - a.x, b.y - a.y, b.z - a.z);
        let mut t_min = 0.0f64;
        let mut t_max = 1.0f64;
        for (orig, dir, lo, hi) in [
            (a.x, d.x, self.min.x, self.max.x),
            (a.y, d.y, self.min.y, self.max.y),
            (a.z, d.z, self.min.z, self.max.z),
        ] {
            if dir.abs() < 1e-12 {
                if orig < lo || orig > hi {
                    return false;
                }
            } else {
                let mut t1 = (lo - orig) / dir;
                let mut t2 = (hi - orig) / dir;
                if t1 > t2 {
                    std::mem::swap(&mut t1, &mut t2);
                }
                t_min = t_min.max(t1);
                t_max = t_max.min(t2);
                if t_min > t_max {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn containment_and_overlap() {
        let outer = Aabb::new(Vec3::new(0.0, 0.0, 0.0), Vec3::new(2.0, 2.0, 2.0));
        let inner = Aabb::new(Vec3::new(0.5, 0.5, 0.5), Vec3::new(1.0, 1.0, 1.0));
        assert!(outer.contains_box(&inner));
        assert!(!inner.contains_box(&outer));
        assert!((outer.footprint_overlap(&inner) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn segment_hits_box() {
        let b = Aabb::new(Vec3::new(1.0, -0.5, 0.0), Vec3::new(2.0, 0.5, 1.0));
        let eye = Vec3::new(0.0, 0.0, 0.5);
        let target = Vec3::new(3.0, 0.0, 0.5);
        assert!(b.intersects_segment(&eye, &target));
        let off = Vec3::new(3.0, 2.0, 0.5);
        assert!(!b.intersects_segment(&eye, &off));
        // Segment ending before the box does not hit it.
        let short = Vec3::new(0.9, 0.0, 0.5);
        assert!(!b.intersects_segment(&eye, &short));
    }
}
