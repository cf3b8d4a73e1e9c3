//! Structural analysis of designs: strand transitivity, coherence of the
//! interlacement, and the strand doubling/halving transforms.

use thiserror::Error;

use crate::design::Design;
use crate::enumeration::{full_symmetry_group_with, SymmetryGroupInfo};
use crate::isometry::{Cell, Lattice, QCoord, SymmetryOp};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("operation not applicable to cell numbering: {0}")]
    NotApplicable(String),
}

/// One strand of the periodic fabric, identified by its residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Strand {
    Warp(i64),
    Weft(i64),
}

fn strand_image(op: &SymmetryOp, s: Strand, n: i64) -> Strand {
    let (p, dir) = match s {
        Strand::Warp(x) => (QCoord::new(2 * x + 1, 1), QCoord::new(0, 1)),
        Strand::Weft(y) => (QCoord::new(1, 2 * y + 1), QCoord::new(1, 0)),
    };
    let p2 = op.apply_point(p);
    let d2 = op.linear.apply(dir);
    if d2.x == 0 {
        Strand::Warp(((p2.x - 1) / 2).rem_euclid(n))
    } else {
        Strand::Weft(((p2.y - 1) / 2).rem_euclid(n))
    }
}

/// Is the symmetry group of the design transitive on all warps and wefts?
pub fn is_isonemal(d: &Design) -> bool {
    is_isonemal_with(d, None)
}

/// As [`is_isonemal`], seeded with a lattice of known translation symmetries.
pub fn is_isonemal_with(d: &Design, lattice_hint: Option<&Lattice>) -> bool {
    let info = full_symmetry_group_with(d, lattice_hint);
    group_is_strand_transitive(&info, d.size() as i64)
}

/// Strand transitivity of an explicitly given group.
pub fn group_is_strand_transitive(info: &SymmetryGroupInfo, n: i64) -> bool {
    let ops = info.generators();
    let idx = |s: Strand| -> usize {
        match s {
            Strand::Warp(x) => x as usize,
            Strand::Weft(y) => n as usize + y as usize,
        }
    };
    let mut seen = vec![false; 2 * n as usize];
    let mut stack = vec![Strand::Warp(0)];
    seen[0] = true;
    while let Some(s) = stack.pop() {
        for op in &ops {
            for img in [strand_image(op, s, n), strand_image(&op.invert(), s, n)] {
                let i = idx(img);
                if !seen[i] {
                    seen[i] = true;
                    stack.push(img);
                }
            }
        }
    }
    seen.iter().all(|&b| b)
}

/// Does the prefabric hang together?
///
/// A strand subset can be lifted off exactly when no strand outside it ever
/// passes over a strand inside it, so coherence is strong connectivity of the
/// passes-over relation on one period: warp x passes over weft y at a dark
/// crossing, weft over warp at a pale one.
pub fn hangs_together(d: &Design) -> bool {
    let n = d.size();
    let nodes = 2 * n;
    // adjacency[i] = bitset of j with an edge i -> j
    let words = nodes.div_ceil(64);
    let mut fwd = vec![0u64; nodes * words];
    let mut rev = vec![0u64; nodes * words];
    let add = |adj: &mut Vec<u64>, i: usize, j: usize| {
        adj[i * words + j / 64] |= 1 << (j % 64);
    };
    for y in 0..n {
        for x in 0..n {
            let (from, to) = if d.bit_at(x, y) {
                (x, n + y) // warp over weft
            } else {
                (n + y, x)
            };
            add(&mut fwd, from, to);
            add(&mut rev, to, from);
        }
    }
    // Kosaraju: order by completion on the forward graph, then check that one
    // reverse sweep from the last-finished node covers everything.
    let visit = |adj: &[u64], start: usize, seen: &mut Vec<bool>, order: Option<&mut Vec<usize>>| {
        let mut local_order = Vec::new();
        let mut stack = vec![(start, 0usize)];
        seen[start] = true;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            let mut advanced = false;
            while *next < nodes {
                let j = *next;
                *next += 1;
                if adj[node * words + j / 64] & (1 << (j % 64)) != 0 && !seen[j] {
                    seen[j] = true;
                    stack.push((j, 0));
                    advanced = true;
                    break;
                }
            }
            if !advanced && stack.last().map(|&(n2, nx)| n2 == node && nx >= nodes).unwrap_or(false) {
                stack.pop();
                local_order.push(node);
            }
        }
        if let Some(o) = order {
            o.extend(local_order);
        }
    };
    let mut seen = vec![false; nodes];
    let mut order = Vec::with_capacity(nodes);
    for s in 0..nodes {
        if !seen[s] {
            visit(&fwd, s, &mut seen, Some(&mut order));
        }
    }
    let mut seen2 = vec![false; nodes];
    let root = *order.last().unwrap();
    visit(&rev, root, &mut seen2, None);
    seen2.iter().all(|&b| b)
}

/// Replaces every strand by a pair of strands with the same behaviour.
pub fn double(d: &Design) -> Design {
    Design::from_fn(2 * d.size(), |x, y| {
        d.color(x.div_euclid(2), y.div_euclid(2))
    })
}

/// One of the four quadrant numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrant {
    Q1,
    Q2,
    Q3,
    Q4,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::Q1, Quadrant::Q2, Quadrant::Q3, Quadrant::Q4];

    pub fn index(&self) -> u8 {
        match self {
            Quadrant::Q1 => 1,
            Quadrant::Q2 => 2,
            Quadrant::Q3 => 3,
            Quadrant::Q4 => 4,
        }
    }

    /// Offset of this quadrant's cell inside its 2×2 block, numbered like the
    /// quadrants of the Cartesian plane.
    fn offset(&self) -> (i64, i64) {
        match self {
            Quadrant::Q1 => (1, 1),
            Quadrant::Q2 => (0, 1),
            Quadrant::Q3 => (0, 0),
            Quadrant::Q4 => (1, 0),
        }
    }

    fn interchanged(&self) -> Quadrant {
        match self {
            Quadrant::Q1 => Quadrant::Q3,
            Quadrant::Q3 => Quadrant::Q1,
            Quadrant::Q2 => Quadrant::Q4,
            Quadrant::Q4 => Quadrant::Q2,
        }
    }
}

/// Grouping of the cells into 2×2 blocks numbered as Cartesian quadrants.
///
/// The anchor parities say which cells are the lower-left corners of blocks;
/// the default anchors blocks at even-even cells. All four anchors describe
/// the same construction shifted, and all are exposed because a design fixes
/// no preferred alignment.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QuadrantNumbering {
    pub anchor: (u8, u8),
}

impl QuadrantNumbering {
    pub const ALL: [QuadrantNumbering; 4] = [
        QuadrantNumbering { anchor: (0, 0) },
        QuadrantNumbering { anchor: (1, 0) },
        QuadrantNumbering { anchor: (0, 1) },
        QuadrantNumbering { anchor: (1, 1) },
    ];

    pub fn number(&self, c: Cell) -> Quadrant {
        let px = (c.x - self.anchor.0 as i64).rem_euclid(2);
        let py = (c.y - self.anchor.1 as i64).rem_euclid(2);
        match (px, py) {
            (1, 1) => Quadrant::Q1,
            (0, 1) => Quadrant::Q2,
            (0, 0) => Quadrant::Q3,
            _ => Quadrant::Q4,
        }
    }

    /// Cell parity class: quadrants 1 and 3 versus 2 and 4.
    fn parity(&self, c: Cell) -> u8 {
        ((c.x - self.anchor.0 as i64 + c.y - self.anchor.1 as i64).rem_euclid(2)) as u8
    }
}

/// The factor design keeping the `k`-numbered cell of every block.
///
/// Designs with an odd box are re-tiled to twice the box first so the 2×2
/// blocks align with the period.
pub fn halve(d: &Design, numbering: &QuadrantNumbering, k: Quadrant) -> Design {
    let d = if d.size() % 2 == 1 {
        d.tile(2)
    } else {
        d.clone()
    };
    let (dx, dy) = k.offset();
    let (ax, ay) = (numbering.anchor.0 as i64, numbering.anchor.1 as i64);
    Design::from_fn(d.size() / 2, |x, y| {
        d.color(2 * x + ax + dx, 2 * y + ay + dy)
    })
}

/// Lattice of known translation symmetries of a halved factor, given the
/// lattice of the original design.
pub fn halved_lattice(l: &Lattice) -> Lattice {
    let e = l.even_sublattice();
    let b = e.basis();
    Lattice::new((b[0].0 / 2, b[0].1 / 2), (b[1].0 / 2, b[1].1 / 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumberingEffect {
    Preserves,
    /// Quadrants 1 and 3 swap, or 2 and 4 swap.
    Interchanges,
}

/// How an operation acts on the quadrant numbering, split by the parity class
/// of the cells: the class its axis runs through and the opposite class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NumberingAction {
    pub same_parity: NumberingEffect,
    pub opposite_parity: NumberingEffect,
    /// For reflections whose lattice unit has odd length: the interchange on
    /// the opposite class cancels against the unit-length axis translation,
    /// so a subgroup still preserves the numbering.
    pub opposite_preserved_with_translation: bool,
}

/// Action of a translation or mirror-position diagonal reflection/glide on
/// the cell numbering. Displaced-axis glides swap the two parity classes and
/// are rejected, as are rotations.
///
/// `unit_length_delta` is the length of the lattice unit along the axis, used
/// only to report the odd-length reflection compensation.
pub fn numbering_action(
    op: &SymmetryOp,
    numbering: &QuadrantNumbering,
    unit_length_delta: Option<u32>,
) -> Result<NumberingAction, AnalysisError> {
    let class = op.classify();
    if op.linear.is_rotation() {
        return Err(AnalysisError::NotApplicable("rotations are not covered".into()));
    }
    if op.linear.is_reflection() && class.mirror_position.is_none() {
        return Err(AnalysisError::NotApplicable(
            "only diagonal axes have a numbering action".into(),
        ));
    }
    if class.mirror_position == Some(false) {
        return Err(AnalysisError::NotApplicable(
            "displaced axes interchange the parity classes themselves".into(),
        ));
    }

    // The action is affine, so behaviour per cell-parity class is determined
    // by probing one 4×4 block of cells.
    let mut effect: [Option<NumberingEffect>; 2] = [None, None];
    for x in 0..4 {
        for y in 0..4 {
            let c = Cell::new(x, y);
            let img = op.apply_cell(c);
            if numbering.parity(img) != numbering.parity(c) {
                return Err(AnalysisError::NotApplicable(
                    "operation does not preserve the cell parity classes".into(),
                ));
            }
            let e = if numbering.number(img) == numbering.number(c) {
                NumberingEffect::Preserves
            } else if numbering.number(img) == numbering.number(c).interchanged() {
                NumberingEffect::Interchanges
            } else {
                return Err(AnalysisError::NotApplicable(
                    "operation crosses quadrant pairs".into(),
                ));
            };
            let p = numbering.parity(c) as usize;
            match effect[p] {
                None => effect[p] = Some(e),
                Some(prev) if prev == e => {}
                _ => {
                    return Err(AnalysisError::NotApplicable(
                        "inconsistent action on a parity class".into(),
                    ))
                }
            }
        }
    }
    let effect = [effect[0].unwrap(), effect[1].unwrap()];

    // Which parity class does the axis run through?
    let axis_parity: u8 = match (class.axis_slope, class.axis_offset) {
        (Some(crate::isometry::AxisSlope::Plus), Some(c)) => {
            // Cells with y − x = c/2.
            numbering.parity(Cell::new(0, c / 2))
        }
        (Some(crate::isometry::AxisSlope::Minus), Some(c)) => {
            // Cells with x + y = c/2 − 1.
            numbering.parity(Cell::new(0, c / 2 - 1))
        }
        _ => 0, // translations: classes behave identically
    };
    let same = effect[axis_parity as usize];
    let opposite = effect[1 - axis_parity as usize];
    let compensated = op.linear.is_reflection()
        && class.glide_in_beta == Some(0)
        && opposite == NumberingEffect::Interchanges
        && unit_length_delta.is_some_and(|l| l % 2 == 1);
    Ok(NumberingAction {
        same_parity: same,
        opposite_parity: opposite,
        opposite_preserved_with_translation: compensated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::{Linear, Side};

    #[test]
    fn trivial_prefabric_falls_apart() {
        assert!(!hangs_together(&Design::trivial(3, true)));
        assert!(!hangs_together(&Design::trivial(1, false)));
    }

    #[test]
    fn plain_weave_hangs_and_is_isonemal() {
        let d = Design::plain_weave();
        assert!(hangs_together(&d));
        assert!(is_isonemal(&d));
    }

    #[test]
    fn stripes_are_not_isonemal() {
        // Vertical all-dark and all-pale stripes: coherent columns but the
        // symmetry group cannot map warps to wefts.
        let d = Design::from_fn(2, |x, _| x == 0);
        assert!(!is_isonemal(&d));
    }

    #[test]
    fn hangs_together_invariant_under_views_and_complement() {
        let seq = [
            true, false, false, true, true, false, true, false, false, true, true, true,
        ];
        let d = Design::from_fn(12, |x, y| seq[(x - 5 * y).rem_euclid(12) as usize]);
        let h = hangs_together(&d);
        for v in crate::design::ViewId::ALL {
            assert_eq!(hangs_together(&d.view(v)), h);
        }
        assert_eq!(hangs_together(&d.complement()), h);
    }

    #[test]
    fn doubling_plain_weave_gives_block_checkerboard() {
        let doubled = double(&Design::plain_weave());
        let expected = Design::from_fn(4, |x, y| (x.div_euclid(2) + y.div_euclid(2)) % 2 == 1);
        assert_eq!(doubled, expected);
        assert_eq!(doubled.order(), 4);
        // Plain weave itself survives doubling thanks to its quarter-turns.
        assert!(is_isonemal(&doubled));
    }

    #[test]
    fn doubling_doubles_order() {
        let seq = [
            true, false, false, true, true, false, true, false, false, true, true, true,
        ];
        let d = Design::from_fn(12, |x, y| seq[(x - 5 * y).rem_euclid(12) as usize]);
        assert_eq!(double(&d).order(), 2 * d.order());
    }

    #[test]
    fn all_factors_of_plain_weave_are_trivial() {
        let pw = Design::plain_weave();
        for num in QuadrantNumbering::ALL {
            for k in Quadrant::ALL {
                let f = halve(&pw, &num, k);
                let first = f.color(0, 0);
                assert_eq!(f, Design::trivial(f.size(), first));
            }
        }
    }

    #[test]
    fn halving_odd_boxes_tiles_first() {
        let d = Design::from_rows(&["101", "010", "011"]);
        let f = halve(&d, &QuadrantNumbering::default(), Quadrant::Q3);
        assert_eq!(f.size(), 3);
        // Q3 keeps cells with both coordinates even.
        for y in 0..3 {
            for x in 0..3 {
                assert_eq!(f.color(x, y), d.color(2 * x, 2 * y));
            }
        }
    }

    #[test]
    fn numbering_action_identity_preserves() {
        let a = numbering_action(
            &SymmetryOp::identity(),
            &QuadrantNumbering::default(),
            None,
        )
        .unwrap();
        assert_eq!(a.same_parity, NumberingEffect::Preserves);
        assert_eq!(a.opposite_parity, NumberingEffect::Preserves);
    }

    #[test]
    fn numbering_action_table_rows() {
        let num = QuadrantNumbering::default();
        // Odd glide (one cell diagonal), axis through the origin corner: the
        // axis runs through cells of its own parity; interchanges there.
        let odd_glide = SymmetryOp::diagonal_glide(0, 2, Side::Tau).unwrap();
        let a = numbering_action(&odd_glide, &num, None).unwrap();
        assert_eq!(a.same_parity, NumberingEffect::Interchanges);
        assert_eq!(a.opposite_parity, NumberingEffect::Preserves);

        // Even glide: preserves on its own parity, interchanges opposite.
        let even_glide = SymmetryOp::diagonal_glide(0, 4, Side::Tau).unwrap();
        let a = numbering_action(&even_glide, &num, None).unwrap();
        assert_eq!(a.same_parity, NumberingEffect::Preserves);
        assert_eq!(a.opposite_parity, NumberingEffect::Interchanges);

        // Reflection behaves like a zero glide.
        let mirror = SymmetryOp::diagonal_mirror(0, Side::Tau).unwrap();
        let a = numbering_action(&mirror, &num, Some(2)).unwrap();
        assert_eq!(a.same_parity, NumberingEffect::Preserves);
        assert_eq!(a.opposite_parity, NumberingEffect::Interchanges);
        assert!(!a.opposite_preserved_with_translation);
        // With an odd-length unit the interchange is compensated.
        let a = numbering_action(&mirror, &num, Some(3)).unwrap();
        assert!(a.opposite_preserved_with_translation);
    }

    #[test]
    fn numbering_action_rejects_displaced_axes_and_rotations() {
        let displaced = SymmetryOp::diagonal_glide(1, 1, Side::E).unwrap();
        assert!(numbering_action(&displaced, &QuadrantNumbering::default(), None).is_err());
        let rot = SymmetryOp::new(Linear::Rot90, QCoord::new(0, 0), Side::Tau).unwrap();
        assert!(numbering_action(&rot, &QuadrantNumbering::default(), None).is_err());
    }

    #[test]
    fn diagonal_translation_interchanges_both_classes() {
        let t = SymmetryOp::translation((1, 1), Side::E);
        let a = numbering_action(&t, &QuadrantNumbering::default(), None).unwrap();
        assert_eq!(a.same_parity, NumberingEffect::Interchanges);
        assert_eq!(a.opposite_parity, NumberingEffect::Interchanges);
        let t = SymmetryOp::translation((2, 0), Side::E);
        let a = numbering_action(&t, &QuadrantNumbering::default(), None).unwrap();
        assert_eq!(a.same_parity, NumberingEffect::Preserves);
        // Mixed-parity translations swap the classes themselves.
        let t = SymmetryOp::translation((1, 0), Side::E);
        assert!(numbering_action(&t, &QuadrantNumbering::default(), None).is_err());
    }
}
