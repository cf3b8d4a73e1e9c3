//! Exact algebra of grid isometries with a layer-exchange flag.
//!
//! Everything is done in quarter-cell integer coordinates: one cell edge is 2
//! units, so the cell with corner coordinates `(x, y)` (in cells) has its
//! centre at the odd-odd point `(2x+1, 2y+1)`. The diagonal step `β` is the
//! vector `(1, 1)` and the full cell diagonal `δ` is `(2, 2)`. Working in
//! these units keeps every representable isometry — including glides by odd
//! multiples of `β` along displaced axes — in integer arithmetic.
//!
//! An operation carries a `side` flag: `e` leaves the two strand layers in
//! place, `τ` exchanges them. The induced action on the colouring of a design
//! is the *colour sign*: it is `-1` exactly when one, but not both, of
//! {the planar part swaps warp and weft directions, the side is `τ`} holds.

use std::fmt;

use thiserror::Error;

/// A point or vector in quarter-cell units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QCoord {
    pub x: i64,
    pub y: i64,
}

impl QCoord {
    pub const fn new(x: i64, y: i64) -> Self {
        QCoord { x, y }
    }
}

/// A cell of the grid, addressed by integer cell coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    /// Centre of the cell in quarter-cell units (always an odd-odd point).
    pub fn center(&self) -> QCoord {
        QCoord::new(2 * self.x + 1, 2 * self.y + 1)
    }

    pub fn from_center(q: QCoord) -> Option<Cell> {
        if q.x & 1 == 1 && q.y & 1 == 1 {
            Some(Cell::new((q.x - 1) / 2, (q.y - 1) / 2))
        } else {
            None
        }
    }
}

/// The eight grid-compatible orthogonal parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Linear {
    Id,
    Rot90,
    Rot180,
    Rot270,
    /// Reflection in a horizontal axis (y ↦ −y).
    MirH,
    /// Reflection in a vertical axis (x ↦ −x).
    MirV,
    /// Reflection in the diagonal y = x.
    MirDiag,
    /// Reflection in the antidiagonal y = −x.
    MirAnti,
}

impl Linear {
    pub const ALL: [Linear; 8] = [
        Linear::Id,
        Linear::Rot90,
        Linear::Rot180,
        Linear::Rot270,
        Linear::MirH,
        Linear::MirV,
        Linear::MirDiag,
        Linear::MirAnti,
    ];

    /// 2×2 matrix columns as (image of e_x, image of e_y).
    fn matrix(self) -> [(i64, i64); 2] {
        match self {
            Linear::Id => [(1, 0), (0, 1)],
            Linear::Rot90 => [(0, 1), (-1, 0)],
            Linear::Rot180 => [(-1, 0), (0, -1)],
            Linear::Rot270 => [(0, -1), (1, 0)],
            Linear::MirH => [(1, 0), (0, -1)],
            Linear::MirV => [(-1, 0), (0, 1)],
            Linear::MirDiag => [(0, 1), (1, 0)],
            Linear::MirAnti => [(0, -1), (-1, 0)],
        }
    }

    fn from_matrix(m: [(i64, i64); 2]) -> Linear {
        for l in Linear::ALL {
            if l.matrix() == m {
                return l;
            }
        }
        unreachable!("not an orthogonal grid matrix: {m:?}")
    }

    pub fn apply(self, p: QCoord) -> QCoord {
        let [cx, cy] = self.matrix();
        QCoord::new(cx.0 * p.x + cy.0 * p.y, cx.1 * p.x + cy.1 * p.y)
    }

    pub fn compose(self, other: Linear) -> Linear {
        let [ox, oy] = other.matrix();
        let a = self.apply(QCoord::new(ox.0, ox.1));
        let b = self.apply(QCoord::new(oy.0, oy.1));
        Linear::from_matrix([(a.x, a.y), (b.x, b.y)])
    }

    pub fn inverse(self) -> Linear {
        match self {
            Linear::Rot90 => Linear::Rot270,
            Linear::Rot270 => Linear::Rot90,
            other => other,
        }
    }

    /// True when vertical lines map to horizontal lines and vice versa.
    pub fn swaps_axes(self) -> bool {
        matches!(
            self,
            Linear::Rot90 | Linear::Rot270 | Linear::MirDiag | Linear::MirAnti
        )
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, Linear::Rot90 | Linear::Rot180 | Linear::Rot270)
    }

    pub fn is_reflection(self) -> bool {
        matches!(
            self,
            Linear::MirH | Linear::MirV | Linear::MirDiag | Linear::MirAnti
        )
    }
}

/// Layer action of an operation: keep the two strand layers or exchange them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Side-preserving (`e`).
    E,
    /// Side-reversing (`τ`): reflection in the fabric plane is part of the op.
    Tau,
}

impl Side {
    pub fn xor(self, other: Side) -> Side {
        if (self == Side::Tau) != (other == Side::Tau) {
            Side::Tau
        } else {
            Side::E
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::E => write!(f, "e"),
            Side::Tau => write!(f, "τ"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IsometryError {
    /// The shift would map cell centres off the centre grid.
    #[error("shift ({0}, {1}) does not preserve cell centres (both components must be even)")]
    OffGrid(i64, i64),
}

/// A grid isometry together with its layer action.
///
/// The map is `p ↦ linear(p) + shift` on quarter-cell coordinates. Every one
/// of the eight orthogonal parts preserves the odd-odd parity class, so the
/// shift of a representable operation always has two even components; the
/// constructor enforces this.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetryOp {
    pub linear: Linear,
    pub shift: QCoord,
    pub side: Side,
}

impl SymmetryOp {
    pub fn new(linear: Linear, shift: QCoord, side: Side) -> Result<Self, IsometryError> {
        if shift.x & 1 != 0 || shift.y & 1 != 0 {
            return Err(IsometryError::OffGrid(shift.x, shift.y));
        }
        Ok(SymmetryOp {
            linear,
            shift,
            side,
        })
    }

    pub fn identity() -> Self {
        SymmetryOp {
            linear: Linear::Id,
            shift: QCoord::new(0, 0),
            side: Side::E,
        }
    }

    /// Translation by a cell vector.
    pub fn translation(t: (i64, i64), side: Side) -> Self {
        SymmetryOp {
            linear: Linear::Id,
            shift: QCoord::new(2 * t.0, 2 * t.1),
            side,
        }
    }

    /// Reflection in the diagonal line `y = x + c` (offset in quarter units),
    /// composed with a glide of `k` diagonal half-steps `β` along the axis.
    ///
    /// Representable only when `k ≡ c (mod 2)`: mirror-position axes (even
    /// `c`) take glides by whole cell diagonals, displaced axes (odd `c`)
    /// take glides by odd multiples of `β`.
    pub fn diagonal_glide(c: i64, k: i64, side: Side) -> Result<Self, IsometryError> {
        SymmetryOp::new(Linear::MirDiag, QCoord::new(k - c, k + c), side)
    }

    /// Pure reflection in the diagonal `y = x + c`; `c` must be even.
    pub fn diagonal_mirror(c: i64, side: Side) -> Result<Self, IsometryError> {
        SymmetryOp::diagonal_glide(c, 0, side)
    }

    /// Colour action on designs: `-1` means the operation complements colours.
    pub fn color_sign(&self) -> i8 {
        if self.linear.swaps_axes() != (self.side == Side::Tau) {
            -1
        } else {
            1
        }
    }

    pub fn compose(&self, other: &SymmetryOp) -> SymmetryOp {
        let s = self.linear.apply(other.shift);
        SymmetryOp {
            linear: self.linear.compose(other.linear),
            shift: QCoord::new(s.x + self.shift.x, s.y + self.shift.y),
            side: self.side.xor(other.side),
        }
    }

    pub fn invert(&self) -> SymmetryOp {
        let li = self.linear.inverse();
        let s = li.apply(self.shift);
        SymmetryOp {
            linear: li,
            shift: QCoord::new(-s.x, -s.y),
            side: self.side,
        }
    }

    pub fn apply_point(&self, p: QCoord) -> QCoord {
        let q = self.linear.apply(p);
        QCoord::new(q.x + self.shift.x, q.y + self.shift.y)
    }

    pub fn apply_cell(&self, c: Cell) -> Cell {
        Cell::from_center(self.apply_point(c.center()))
            .expect("representable ops preserve cell centres")
    }

    /// Normal form of the isometry: translation class, axis data, glide.
    pub fn classify(&self) -> OpClass {
        let s = self.shift;
        match self.linear {
            Linear::Id => OpClass {
                kind: if self.side == Side::Tau {
                    OpKind::TauTranslation
                } else {
                    OpKind::Translation
                },
                side: self.side,
                axis_slope: None,
                axis_offset: None,
                mirror_position: None,
                glide_in_beta: None,
            },
            Linear::Rot90 | Linear::Rot180 | Linear::Rot270 => OpClass {
                kind: OpKind::Rotation,
                side: self.side,
                axis_slope: None,
                axis_offset: None,
                mirror_position: None,
                glide_in_beta: None,
            },
            Linear::MirDiag => {
                // y = x + c with glide k along (1,1).
                let k = (s.x + s.y) / 2;
                let c = (s.y - s.x) / 2;
                OpClass::axis(self.side, AxisSlope::Plus, c, k, Some(c & 1 == 0))
            }
            Linear::MirAnti => {
                // y = −x + c with glide k along (1,−1).
                let k = (s.x - s.y) / 2;
                let c = (s.x + s.y) / 2;
                OpClass::axis(self.side, AxisSlope::Minus, c, k, Some(c & 1 == 0))
            }
            Linear::MirH => {
                // Horizontal axis y = s.y / 2, glide s.x along it.
                OpClass::axis(self.side, AxisSlope::Zero, s.y / 2, s.x, None)
            }
            Linear::MirV => OpClass::axis(self.side, AxisSlope::Infinite, s.x / 2, s.y, None),
        }
    }
}

/// Direction of a reflection/glide axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxisSlope {
    /// Diagonal, slope +1.
    Plus,
    /// Antidiagonal, slope −1.
    Minus,
    /// Horizontal.
    Zero,
    /// Vertical.
    Infinite,
}

impl fmt::Display for AxisSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxisSlope::Plus => write!(f, "+1"),
            AxisSlope::Minus => write!(f, "-1"),
            AxisSlope::Zero => write!(f, "0"),
            AxisSlope::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Translation,
    TauTranslation,
    Mirror,
    Glide,
    Rotation,
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpKind::Translation => write!(f, "translation"),
            OpKind::TauTranslation => write!(f, "τ-translation"),
            OpKind::Mirror => write!(f, "mirror"),
            OpKind::Glide => write!(f, "glide"),
            OpKind::Rotation => write!(f, "rotation"),
        }
    }
}

/// Classification of a [`SymmetryOp`].
///
/// For diagonal axes the glide is reported in `β` units and `mirror_position`
/// says whether the axis runs through cell corners (true) or edge midpoints
/// (false). For horizontal/vertical axes the glide is in quarter units and
/// mirror position is not defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpClass {
    pub kind: OpKind,
    pub side: Side,
    pub axis_slope: Option<AxisSlope>,
    /// Axis offset: for slope ±1 the `c` of `y = ±x + c` in quarter units,
    /// for axial mirrors the line coordinate in quarter units.
    pub axis_offset: Option<i64>,
    pub mirror_position: Option<bool>,
    pub glide_in_beta: Option<i64>,
}

impl OpClass {
    fn axis(side: Side, slope: AxisSlope, c: i64, k: i64, mirror_position: Option<bool>) -> Self {
        let diagonal = matches!(slope, AxisSlope::Plus | AxisSlope::Minus);
        OpClass {
            kind: if k == 0 { OpKind::Mirror } else { OpKind::Glide },
            side,
            axis_slope: Some(slope),
            axis_offset: Some(c),
            mirror_position,
            glide_in_beta: if diagonal { Some(k) } else { None },
        }
    }
}

impl fmt::Display for OpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let (Some(slope), Some(c)) = (self.axis_slope, self.axis_offset) {
            write!(f, " axis={slope},{c}")?;
        }
        if let Some(k) = self.glide_in_beta {
            write!(f, " glide={k}β")?;
        }
        write!(f, " side={}", self.side)
    }
}

/// A full-rank integer lattice in cell coordinates, used both for the
/// translation subgroups of symmetry groups and for the translation
/// periodicity of designs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lattice {
    v1: (i64, i64),
    v2: (i64, i64),
    det: i64,
}

impl Lattice {
    /// Basis vectors in cell coordinates; they must be independent.
    pub fn new(a: (i64, i64), b: (i64, i64)) -> Self {
        let det = a.0 * b.1 - a.1 * b.0;
        assert!(det != 0, "lattice basis must be independent");
        if det < 0 {
            Lattice {
                v1: b,
                v2: a,
                det: -det,
            }
        } else {
            Lattice { v1: a, v2: b, det }
        }
    }

    pub fn square(n: i64) -> Self {
        Lattice::new((n, 0), (0, n))
    }

    pub fn basis(&self) -> [(i64, i64); 2] {
        [self.v1, self.v2]
    }

    /// Index of the lattice in ℤ², i.e. the cell area of a fundamental domain.
    pub fn det(&self) -> i64 {
        self.det
    }

    /// Rational coordinates of `t` w.r.t. the basis, times `det`.
    fn coords_num(&self, t: (i64, i64)) -> (i64, i64) {
        (
            t.0 * self.v2.1 - t.1 * self.v2.0,
            self.v1.0 * t.1 - self.v1.1 * t.0,
        )
    }

    pub fn contains(&self, t: (i64, i64)) -> bool {
        let (n1, n2) = self.coords_num(t);
        n1.rem_euclid(self.det) == 0 && n2.rem_euclid(self.det) == 0
    }

    /// Canonical representative of `t` in a half-open fundamental domain.
    pub fn reduce(&self, t: (i64, i64)) -> (i64, i64) {
        let (n1, n2) = self.coords_num(t);
        let a = n1.div_euclid(self.det);
        let b = n2.div_euclid(self.det);
        (
            t.0 - a * self.v1.0 - b * self.v2.0,
            t.1 - a * self.v1.1 - b * self.v2.1,
        )
    }

    pub fn reduce_cell(&self, c: Cell) -> Cell {
        let (x, y) = self.reduce((c.x, c.y));
        Cell::new(x, y)
    }

    /// All canonical representatives, ordered by (y, x).
    pub fn domain(&self) -> Vec<Cell> {
        let mut cells: Vec<Cell> = Vec::with_capacity(self.det as usize);
        // Reps lie within the bounding box of the fundamental parallelogram.
        let xs = [0, self.v1.0, self.v2.0, self.v1.0 + self.v2.0];
        let ys = [0, self.v1.1, self.v2.1, self.v1.1 + self.v2.1];
        let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
        let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
        for y in y0..=y1 {
            for x in x0..=x1 {
                let c = Cell::new(x, y);
                if self.reduce_cell(c) == c {
                    cells.push(c);
                }
            }
        }
        debug_assert_eq!(cells.len() as i64, self.det);
        cells.sort_by_key(|c| (c.y, c.x));
        cells
    }

    /// Minimal p > 0 with (p, 0) in the lattice.
    pub fn min_period_x(&self) -> i64 {
        let d = self.det;
        let p1 = d / gcd(d, self.v2.1.rem_euclid(d));
        let p2 = d / gcd(d, self.v1.1.rem_euclid(d));
        lcm(p1, p2)
    }

    /// Minimal p > 0 with (0, p) in the lattice.
    pub fn min_period_y(&self) -> i64 {
        let d = self.det;
        let p1 = d / gcd(d, self.v2.0.rem_euclid(d));
        let p2 = d / gcd(d, self.v1.0.rem_euclid(d));
        lcm(p1, p2)
    }

    pub fn scaled(&self, k: i64) -> Lattice {
        Lattice::new(
            (self.v1.0 * k, self.v1.1 * k),
            (self.v2.0 * k, self.v2.1 * k),
        )
    }

    /// The sublattice of vectors with both components even.
    pub fn even_sublattice(&self) -> Lattice {
        let odd = |v: (i64, i64)| ((v.0 & 1) != 0) || ((v.1 & 1) != 0);
        let parity = |v: (i64, i64)| ((v.0 & 1) as u8) << 1 | (v.1 & 1) as u8;
        let (a, b) = (self.v1, self.v2);
        match (odd(a), odd(b)) {
            (false, false) => *self,
            (false, true) => Lattice::new(a, (2 * b.0, 2 * b.1)),
            (true, false) => Lattice::new((2 * a.0, 2 * a.1), b),
            (true, true) => {
                if parity(a) == parity(b) {
                    Lattice::new((a.0 + b.0, a.1 + b.1), (2 * b.0, 2 * b.1))
                } else {
                    Lattice::new((2 * a.0, 2 * a.1), (2 * b.0, 2 * b.1))
                }
            }
        }
    }

    /// Does `linear` map this lattice onto itself?
    pub fn normalized_by(&self, linear: Linear) -> bool {
        let im = |v: (i64, i64)| {
            let q = linear.apply(QCoord::new(v.0, v.1));
            (q.x, q.y)
        };
        self.contains(im(self.v1)) && self.contains(im(self.v2))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
