//! Reference implementations written without the crate's internals: plain
//! 4×4 arrays for kinematics, direct torque sums for statics.

#![allow(dead_code)]

use jointfatigue_core::anthro::SegmentDimensions;
use jointfatigue_core::skeleton::{JointId, SkeletonModel};
use jointfatigue_core::statics::ExternalLoad;
use nalgebra::{IsometryMatrix3, Vector3};

pub type Mat4 = [[f64; 4]; 4];
pub type V3 = [f64; 3];

pub fn identity() -> Mat4 {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

pub fn mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn rot_x(t: f64) -> Mat4 {
    let (s, c) = t.sin_cos();
    [[1.0, 0.0, 0.0, 0.0], [0.0, c, -s, 0.0], [0.0, s, c, 0.0], [0.0, 0.0, 0.0, 1.0]]
}

pub fn rot_z(t: f64) -> Mat4 {
    let (s, c) = t.sin_cos();
    [[c, -s, 0.0, 0.0], [s, c, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]
}

pub fn trans(x: f64, y: f64, z: f64) -> Mat4 {
    let mut m = identity();
    m[0][3] = x;
    m[1][3] = y;
    m[2][3] = z;
    m
}

/// Modified DH link: rotate about x by α, slide a along x, rotate about z
/// by θ, slide d along z.
pub fn dh(a: f64, alpha: f64, d: f64, theta: f64) -> Mat4 {
    let m = mul(&rot_x(alpha), &trans(a, 0.0, 0.0));
    let m = mul(&m, &rot_z(theta));
    mul(&m, &trans(0.0, 0.0, d))
}

pub fn from_isometry(iso: &IsometryMatrix3<f64>) -> Mat4 {
    let h = iso.to_homogeneous();
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = h[(i, j)];
        }
    }
    m
}

pub fn apply(m: &Mat4, p: V3) -> V3 {
    let mut out = [0.0; 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = m[i][0] * p[0] + m[i][1] * p[1] + m[i][2] * p[2] + m[i][3];
    }
    out
}

/// Ancestors of joint index `i` from the root down to `i` itself.
pub fn chain(model: &SkeletonModel, i: usize) -> Vec<usize> {
    let mut out = vec![i];
    let mut cur = model.joints()[i].parent;
    while let Some(p) = cur {
        out.push(p.index());
        cur = model.joints()[p.index()].parent;
    }
    out.reverse();
    out
}

/// World transform of every joint, each composed from the root afresh.
pub fn fk(model: &SkeletonModel, q: &[f64]) -> Vec<Mat4> {
    (0..model.dof())
        .map(|i| {
            let mut m = from_isometry(model.root_frame());
            for k in chain(model, i) {
                let j = &model.joints()[k];
                m = mul(&m, &dh(j.dh.a, j.dh.alpha, j.dh.d, j.dh.theta_offset + q[k]));
            }
            m
        })
        .collect()
}

pub fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn v3(v: &Vector3<f64>) -> V3 {
    [v.x, v.y, v.z]
}

/// (attachment joint index, world point, force) for every weight and load.
pub fn point_loads(
    model: &SkeletonModel,
    frames: &[Mat4],
    segs: &SegmentDimensions,
    loads: &[ExternalLoad],
    g: V3,
) -> Vec<(Option<usize>, V3, V3)> {
    let frame_of = |j: Option<JointId>| match j {
        Some(j) => frames[j.index()],
        None => from_isometry(model.root_frame()),
    };
    let mut out = Vec::new();
    for s in model.segments() {
        let m = segs.get(&s.name).unwrap().mass_kg;
        let p = apply(&frame_of(s.joint), v3(&s.com_local));
        out.push((s.joint.map(|j| j.index()), p, [g[0] * m, g[1] * m, g[2] * m]));
    }
    for l in loads {
        let s = model.segment_by_name(&l.segment).unwrap();
        let local = s.com_local + l.offset;
        out.push((s.joint.map(|j| j.index()), apply(&frame_of(s.joint), v3(&local)), v3(&l.force)));
    }
    out
}

/// Per joint: (moment about the joint origin, summed force, torque scale
/// Σ|r|·|F| for tolerance purposes).
pub fn brute_force_moments(
    model: &SkeletonModel,
    q: &[f64],
    segs: &SegmentDimensions,
    loads: &[ExternalLoad],
    g: V3,
) -> Vec<(V3, V3, f64)> {
    let frames = fk(model, q);
    let pts = point_loads(model, &frames, segs, loads, g);
    (0..model.dof())
        .map(|j| {
            let origin = [frames[j][0][3], frames[j][1][3], frames[j][2][3]];
            let mut m = [0.0; 3];
            let mut f = [0.0; 3];
            let mut scale = 0.0;
            for (att, p, force) in &pts {
                let distal = match att {
                    Some(k) => chain(model, *k).contains(&j),
                    None => false,
                };
                if !distal {
                    continue;
                }
                let r = [p[0] - origin[0], p[1] - origin[1], p[2] - origin[2]];
                let t = cross(r, *force);
                for i in 0..3 {
                    m[i] += t[i];
                    f[i] += force[i];
                }
                let norm = |v: &V3| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                scale += norm(&r) * norm(force);
            }
            (m, f, scale)
        })
        .collect()
}

/// Closed-form single-bout endurance, seconds: m·(Γmax/L)·ln(C0/L) minutes.
pub fn single_bout_endurance_s(m_min: f64, gmax: f64, c0: f64, load: f64) -> f64 {
    m_min * (gmax / load) * (c0 / load).ln() * 60.0
}

pub mod gen {
    use jointfatigue_core::anthro::{Breadths, SegmentDimension, SegmentDimensions};
    use jointfatigue_core::skeleton::{DhParams, JointId, JointSpec, SegmentId, SegmentSpec, SkeletonModel};
    use jointfatigue_core::statics::ExternalLoad;
    use nalgebra::{IsometryMatrix3, Rotation3, Translation3, Vector3};
    use proptest::prelude::*;

    #[derive(Debug, Clone)]
    pub struct Chain {
        pub model: SkeletonModel,
        pub segs: SegmentDimensions,
        pub loads: Vec<ExternalLoad>,
        pub q: Vec<f64>,
    }

    fn vec3(r: f64) -> impl Strategy<Value = Vector3<f64>> {
        (-r..r, -r..r, -r..r).prop_map(|(x, y, z)| Vector3::new(x, y, z))
    }

    prop_compose! {
        fn joint_row()(a in -0.5..0.5f64, alpha in -3.2..3.2f64, d in -0.5..0.5f64, theta in -3.2..3.2f64,
                       q in -3.2..3.2f64, pick in 0..64usize) -> (DhParams, f64, usize) {
            (DhParams::new(a, alpha, d, theta), q, pick)
        }
    }

    prop_compose! {
        /// A random joint tree of up to `max_joints` joints, one segment per
        /// joint plus one on the root, and up to four external loads.
        pub fn chain(max_joints: usize)(
            rows in prop::collection::vec(joint_row(), 1..=max_joints),
            seg_data in prop::collection::vec((vec3(0.4), 0.0..12.0f64), max_joints + 1),
            load_data in prop::collection::vec((0..64usize, vec3(0.3), vec3(80.0)), 0..=4),
            root_rpy in (-3.2..3.2f64, -3.2..3.2f64, -3.2..3.2f64),
            root_t in vec3(1.0),
        ) -> Chain {
            let n = rows.len();
            let joints: Vec<JointSpec> = rows.iter().enumerate().map(|(i, (dh, _, pick))| JointSpec {
                id: JointId(i + 1),
                name: format!("j{}", i + 1),
                dh: *dh,
                lower_limit: -10.0,
                upper_limit: 10.0,
                parent: if i == 0 || pick % (i + 1) == i { None } else { Some(JointId(pick % i + 1)) },
            }).collect();
            let segments: Vec<SegmentSpec> = (0..=n).map(|i| SegmentSpec {
                id: SegmentId(i),
                name: format!("s{i}"),
                joint: if i == 0 { None } else { Some(JointId(i)) },
                com_local: seg_data[i].0,
            }).collect();
            let dims = SegmentDimensions {
                segments: (0..=n).map(|i| SegmentDimension {
                    name: format!("s{i}"),
                    length_m: 0.3,
                    mass_kg: seg_data[i].1,
                    com_ratio: 0.5,
                }).collect(),
                breadths: Breadths { shoulder_half_width_m: 0.2, hip_half_width_m: 0.15, ankle_height_m: 0.07 },
            };
            let loads = load_data.iter().enumerate().map(|(k, (s, off, f))| ExternalLoad {
                segment: format!("s{}", s % (n + 1)),
                offset: *off,
                force: *f,
                label: format!("load {k}"),
            }).collect();
            let root = IsometryMatrix3::from_parts(
                Translation3::from(root_t),
                Rotation3::from_euler_angles(root_rpy.0, root_rpy.1, root_rpy.2),
            );
            let model = SkeletonModel::new(joints, segments, root).unwrap();
            Chain { model, segs: dims, loads, q: rows.iter().map(|r| r.1).collect() }
        }
    }
}
