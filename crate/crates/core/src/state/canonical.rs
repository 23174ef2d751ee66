use std::fmt;

use nalgebra::{Rotation3, Vector3};

use super::PauliForm;
use crate::linalg::{svd3_proper, RealMatrix3};
use crate::tol::TOLERANCES;

/// Degeneracy pattern of the correlation matrix, with subcases by the
/// support of `s` and `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    AI,
    AII,
    AIII,
    BI,
    BII,
    C,
    D,
    E,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::AI => "A_i",
            CaseTag::AII => "A_ii",
            CaseTag::AIII => "A_iii",
            CaseTag::BI => "B_i",
            CaseTag::BII => "B_ii",
            CaseTag::C => "C",
            CaseTag::D => "D",
            CaseTag::E => "E",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rotation pair taking a form to its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateWitness {
    pub o: RealMatrix3,
    pub p_rot: RealMatrix3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Canonical {
    pub form: PauliForm,
    pub witness: StateWitness,
    pub case: CaseTag,
}

enum Shape {
    Zero,
    RankOne,
    Isotropic,
    /// Equal pair on axes `(a, b)`, odd value on `c`; `(a, b, c)` is cyclic.
    Pair(usize, usize, usize),
    Generic,
}

fn classify(d: &Vector3<f64>, delta: f64) -> Shape {
    let zero = |x: f64| x.abs() <= delta;
    let eq = |x: f64, y: f64| (x - y).abs() <= delta;
    if zero(d[0]) {
        Shape::Zero
    } else if zero(d[1]) {
        Shape::RankOne
    } else if !zero(d[2]) && eq(d[0], d[1]) && eq(d[1], d[2]) {
        Shape::Isotropic
    } else if eq(d[0], d[1]) {
        Shape::Pair(0, 1, 2)
    } else if eq(d[1], d[2]) {
        Shape::Pair(1, 2, 0)
    } else {
        Shape::Generic
    }
}

/// Right-handed rotation by `angle` about coordinate axis `axis`.
fn rot_about(axis: usize, angle: f64) -> RealMatrix3 {
    let (a, b) = ((axis + 1) % 3, (axis + 2) % 3);
    let (sin, cos) = angle.sin_cos();
    let mut r = RealMatrix3::zeros();
    r[(axis, axis)] = 1.0;
    r[(a, a)] = cos;
    r[(a, b)] = -sin;
    r[(b, a)] = sin;
    r[(b, b)] = cos;
    r
}

/// Rotation by π about coordinate axis `axis`.
fn half_turn(axis: usize) -> RealMatrix3 {
    let mut r = -RealMatrix3::identity();
    r[(axis, axis)] = 1.0;
    r
}

/// Rotation taking `v` to the positive `axis` direction.
fn align(v: &Vector3<f64>, axis: usize) -> RealMatrix3 {
    let target = Vector3::ith(axis, 1.0);
    match Rotation3::rotation_between(v, &target) {
        Some(r) => r.into_inner(),
        None => half_turn((axis + 1) % 3),
    }
}

/// Rotation about `axis` bringing the projection of `v` onto the plane
/// of the other two axes to the first of them, cyclically.
fn align_in_plane(v: &Vector3<f64>, axis: usize) -> RealMatrix3 {
    let (a, b) = ((axis + 1) % 3, (axis + 2) % 3);
    rot_about(axis, -v[b].atan2(v[a]))
}

fn first_significant(values: &[f64], delta: f64) -> Option<f64> {
    values.iter().copied().find(|x| x.abs() > delta)
}

struct Frame<'a> {
    source: &'a PauliForm,
    o: RealMatrix3,
    p: RealMatrix3,
}

impl Frame<'_> {
    fn current(&self) -> PauliForm {
        self.source.rotated(&self.o, &self.p)
    }

    fn apply(&mut self, ro: &RealMatrix3, rp: &RealMatrix3) {
        self.o = ro * self.o;
        self.p = rp * self.p;
    }

    fn apply_both(&mut self, r: &RealMatrix3) {
        self.apply(r, r);
    }
}

/// Canonical representative of the local orbit of `f`.
///
/// `β` is brought to `diag(b1, b2, b3)` with `|b1| ≥ |b2| ≥ |b3|` and a common
/// sign equal to the sign of `det β`. The residual symmetry of that diagonal
/// form is then fixed using `s` and `p`. Degeneracies are decided with
/// threshold `1e-7`.
pub fn canonicalize_state(f: &PauliForm) -> Canonical {
    let delta = TOLERANCES.degeneracy;
    let svd = svd3_proper(&f.beta);
    let mut d = svd.d;
    let mut frame = Frame { source: f, o: svd.o.transpose(), p: svd.p.transpose() };
    // det β is numerically zero: take the nonnegative branch.
    if d[2] < 0.0 && d[2].abs() <= delta {
        frame.apply(&half_turn(2), &RealMatrix3::identity());
        d[0] = -d[0];
        d[1] = -d[1];
    }

    let case = match classify(&d, delta) {
        Shape::Generic => canonical_generic(&mut frame, delta),
        Shape::Pair(a, b, c) => canonical_pair(&mut frame, (a, b, c), delta),
        Shape::RankOne => {
            let cur = frame.current();
            let ro = align_in_plane(&cur.s, 0);
            let rp = align_in_plane(&cur.p, 0);
            frame.apply(&ro, &rp);
            let cur = frame.current();
            if first_significant(&[cur.s[0], cur.p[0]], delta).is_some_and(|x| x < 0.0) {
                frame.apply_both(&half_turn(1));
            }
            CaseTag::C
        }
        Shape::Isotropic => {
            let cur = frame.current();
            if cur.s.norm() > delta {
                frame.apply_both(&align(&cur.s, 2));
                let cur = frame.current();
                frame.apply_both(&align_in_plane(&cur.p, 2));
            } else if cur.p.norm() > delta {
                frame.apply_both(&align(&cur.p, 2));
            }
            CaseTag::D
        }
        Shape::Zero => {
            let cur = frame.current();
            let ro = if cur.s.norm() > delta { align(&cur.s, 2) } else { RealMatrix3::identity() };
            let rp = if cur.p.norm() > delta { align(&cur.p, 2) } else { RealMatrix3::identity() };
            frame.apply(&ro, &rp);
            CaseTag::E
        }
    };

    Canonical {
        form: frame.current(),
        witness: StateWitness { o: frame.o, p_rot: frame.p },
        case,
    }
}

/// Distinct nonzero `b_i`: only the half-turn pairs remain. The first two
/// axes carrying any spin component are made positive in their leading
/// component (`s_i` if nonzero, else `p_i`); the third sign is invariant.
fn canonical_generic(frame: &mut Frame<'_>, delta: f64) -> CaseTag {
    let cur = frame.current();
    let leading: Vec<(usize, f64)> = (0..3)
        .filter_map(|i| first_significant(&[cur.s[i], cur.p[i]], delta).map(|x| (i, x)))
        .take(2)
        .collect();
    let flips = [
        Vector3::new(1.0, 1.0, 1.0),
        Vector3::new(1.0, -1.0, -1.0),
        Vector3::new(-1.0, 1.0, -1.0),
        Vector3::new(-1.0, -1.0, 1.0),
    ];
    let eps = flips
        .iter()
        .find(|e| leading.iter().all(|&(i, x)| e[i] * x > 0.0))
        .copied()
        .unwrap_or(flips[0]);
    frame.apply_both(&RealMatrix3::from_diagonal(&eps));

    let support = |v: &Vector3<f64>| (0..3).filter(|&i| v[i].abs() > delta).collect::<Vec<_>>();
    let (ss, sp) = (support(&cur.s), support(&cur.p));
    if ss.len() >= 2 || sp.len() >= 2 {
        CaseTag::AI
    } else if ss.len() == 1 && sp.len() == 1 && ss[0] != sp[0] {
        CaseTag::AIII
    } else {
        CaseTag::AII
    }
}

/// `b_a = b_b ≠ b_c`: joint rotations about `c` plus the half-turn about `a`.
fn canonical_pair(frame: &mut Frame<'_>, (a, b, c): (usize, usize, usize), delta: f64) -> CaseTag {
    let cur = frame.current();
    let s_perp = cur.s[a].hypot(cur.s[b]);
    let p_perp = cur.p[a].hypot(cur.p[b]);
    if s_perp > delta {
        frame.apply_both(&align_in_plane(&cur.s, c));
    } else if p_perp > delta {
        frame.apply_both(&align_in_plane(&cur.p, c));
    }
    let cur = frame.current();
    if first_significant(&[cur.s[c], cur.p[c], cur.p[b], cur.s[b]], delta).is_some_and(|x| x < 0.0) {
        frame.apply_both(&half_turn(a));
    }
    let cur = frame.current();
    if cur.s[c].abs() <= delta && cur.p[c].abs() <= delta {
        CaseTag::BI
    } else {
        CaseTag::BII
    }
}
