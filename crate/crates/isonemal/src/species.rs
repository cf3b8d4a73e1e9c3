//! The ten species of parallel-axis symmetry groups and their parameters.
//!
//! Each species is described by the shape of its symmetry group: which kinds
//! of diagonal axes it has (side-preserving glides, side-reversing glides,
//! mirrors, or combinations), whether the axes sit in mirror position (through
//! cell corners) or displaced (through edge midpoints), and the dimensions of
//! its lattice unit. A *family* fixes the group completely by choosing the
//! unit length `ℓδ` along the axes and width `wδ` across them.
//!
//! All canonical groups are built with axes of slope +1, anchored so that the
//! first axis passes through the origin cell corner (mirror position) or is
//! displaced from it by half a cell edge. Conjugating by a translation moves
//! the anchor and never changes enumeration counts.

use std::fmt;

use thiserror::Error;

use crate::design::{Design, GenusFlag};
use crate::isometry::{Lattice, Side, SymmetryOp};

/// Tag of one of the eighteen species subtypes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpeciesTag {
    S1m,
    S1e,
    S1o,
    S2m,
    S2e,
    S2o,
    S3,
    S4e,
    S4o,
    S5e,
    S5o,
    S6,
    S7e,
    S7o,
    S8e,
    S8o,
    S9,
    S10,
}

impl SpeciesTag {
    pub const ALL: [SpeciesTag; 18] = [
        SpeciesTag::S1m,
        SpeciesTag::S1e,
        SpeciesTag::S1o,
        SpeciesTag::S2m,
        SpeciesTag::S2e,
        SpeciesTag::S2o,
        SpeciesTag::S3,
        SpeciesTag::S4e,
        SpeciesTag::S4o,
        SpeciesTag::S5e,
        SpeciesTag::S5o,
        SpeciesTag::S6,
        SpeciesTag::S7e,
        SpeciesTag::S7o,
        SpeciesTag::S8e,
        SpeciesTag::S8o,
        SpeciesTag::S9,
        SpeciesTag::S10,
    ];

    /// The species number 1–10 without the subtype letter.
    pub fn base(&self) -> u8 {
        use SpeciesTag::*;
        match self {
            S1m | S1e | S1o => 1,
            S2m | S2e | S2o => 2,
            S3 => 3,
            S4e | S4o => 4,
            S5e | S5o => 5,
            S6 => 6,
            S7e | S7o => 7,
            S8e | S8o => 8,
            S9 => 9,
            S10 => 10,
        }
    }

    /// Species whose rhombic lattice units make both dimensions share parity.
    pub fn is_rhombic(&self) -> bool {
        self.base() >= 8
    }
}

impl fmt::Display for SpeciesTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SpeciesTag::*;
        let s = match self {
            S1m => "1_m",
            S1e => "1_e",
            S1o => "1_o",
            S2m => "2_m",
            S2e => "2_e",
            S2o => "2_o",
            S3 => "3",
            S4e => "4_e",
            S4o => "4_o",
            S5e => "5_e",
            S5o => "5_o",
            S6 => "6",
            S7e => "7_e",
            S7o => "7_o",
            S8e => "8_e",
            S8o => "8_o",
            S9 => "9",
            S10 => "10",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for SpeciesTag {
    type Err = SpeciesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SpeciesTag::ALL
            .iter()
            .copied()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| SpeciesError::UnknownTag(s.to_string()))
    }
}

/// A species together with lattice-unit dimensions in `δ` units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpeciesParams {
    pub tag: SpeciesTag,
    /// Lattice-unit length along the axes, in cell diagonals.
    pub ell: u32,
    /// Lattice-unit width across the axes, in cell diagonals.
    pub w: u32,
}

impl SpeciesParams {
    pub fn new(tag: SpeciesTag, ell: u32, w: u32) -> Self {
        SpeciesParams { tag, ell, w }
    }
}

impl fmt::Display for SpeciesParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.tag, self.ell, self.w)
    }
}

/// A named parameter rule that a `(tag, ℓ, w)` triple can violate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleViolation {
    pub rule: &'static str,
    pub message: String,
}

/// Structured verdict of [`validate_params`]: all violated rules, not just
/// the first, so catalog diagnostics can cite everything at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamVerdict {
    pub params: SpeciesParams,
    pub violations: Vec<RuleViolation>,
}

impl ParamVerdict {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when the strand-transitivity rule (unit dimensions relatively
    /// prime, or the rhombic variant for species 8–10) is satisfied,
    /// regardless of size floors or excluded pairs.
    pub fn isonemal_ok(&self) -> bool {
        !self.violations.iter().any(|v| {
            v.rule == rules::COPRIMALITY
                || v.rule == rules::HALVES_COPRIMALITY
                || v.rule == rules::HALVES_PARITY
        })
    }
}

/// Rule names cited in verdicts.
pub mod rules {
    pub const LENGTH_PARITY: &str = "length-parity";
    pub const WIDTH_PARITY: &str = "width-parity";
    pub const COPRIMALITY: &str = "coprimality";
    pub const HALVES_COPRIMALITY: &str = "halves-coprimality";
    pub const HALVES_PARITY: &str = "halves-parity";
    pub const MIN_LENGTH: &str = "minimum-length";
    pub const MIN_WIDTH: &str = "minimum-width";
    pub const EXCLUDED_PAIR: &str = "excluded-pair";
    pub const TWILL_ORIENTATION: &str = "twill-pairing-orientation";
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpeciesError {
    #[error("unknown species tag: {0}")]
    UnknownTag(String),
    #[error("invalid parameters {params}: {}", format_violations(.violations))]
    InvalidParams {
        params: SpeciesParams,
        violations: Vec<RuleViolation>,
    },
    #[error("order {0} is out of scope; only orders of 5 and above are classified")]
    OrderOutOfScope(u32),
}

fn format_violations(violations: &[RuleViolation]) -> String {
    violations
        .iter()
        .map(|v| format!("{}: {}", v.rule, v.message))
        .collect::<Vec<_>>()
        .join("; ")
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Checks a parameter triple against every rule of its species: parity of the
/// dimensions, the relative-primality needed for strand transitivity, size
/// floors, and the handful of excluded small pairs that force extra symmetry.
pub fn validate_params(tag: SpeciesTag, ell: u32, w: u32) -> ParamVerdict {
    use SpeciesTag::*;
    let params = SpeciesParams::new(tag, ell, w);
    let mut v: Vec<RuleViolation> = Vec::new();

    if ell == 0 || w == 0 {
        v.push(RuleViolation {
            rule: rules::MIN_LENGTH,
            message: "dimensions must be positive".into(),
        });
        return ParamVerdict {
            params,
            violations: v,
        };
    }

    let even = |x: u32| x.is_multiple_of(2);
    let mut need = |cond: bool, rule: &'static str, msg: String| {
        if !cond {
            v.push(RuleViolation { rule, message: msg });
        }
    };

    // Dimension parities per subtype: mirror-position glide axes need an even
    // length, displaced axes an odd one; the e/o subscript fixes the width.
    match tag {
        S1m | S2m | S3 => {
            need(even(ell), rules::LENGTH_PARITY, format!("mirror-position axes need even length, got {ell}"));
            need(!even(w), rules::WIDTH_PARITY, format!("width must be odd, got {w}"));
        }
        S1e | S2e | S4e => {
            need(!even(ell), rules::LENGTH_PARITY, format!("displaced axes need odd length, got {ell}"));
            need(even(w), rules::WIDTH_PARITY, format!("width must be even, got {w}"));
        }
        S1o | S2o | S4o => {
            need(!even(ell), rules::LENGTH_PARITY, format!("displaced axes need odd length, got {ell}"));
            need(!even(w), rules::WIDTH_PARITY, format!("width must be odd, got {w}"));
        }
        S5e => {
            need(even(ell) != even(w), rules::WIDTH_PARITY, format!("exactly one dimension must be even, got ({ell},{w})"));
        }
        S5o | S7o => {
            need(!even(ell), rules::LENGTH_PARITY, format!("length must be odd, got {ell}"));
            need(!even(w), rules::WIDTH_PARITY, format!("width must be odd, got {w}"));
        }
        S6 => {
            need(!even(ell), rules::LENGTH_PARITY, format!("length must be odd, got {ell}"));
            need(even(w), rules::WIDTH_PARITY, format!("width must be even, got {w}"));
        }
        S7e => {
            need(even(ell), rules::LENGTH_PARITY, format!("length must be even, got {ell}"));
            need(!even(w), rules::WIDTH_PARITY, format!("width must be odd, got {w}"));
        }
        S8e | S9 => {
            need(even(ell) && even(w), rules::LENGTH_PARITY, format!("rhombic unit dimensions must both be even, got ({ell},{w})"));
        }
        S8o | S10 => {
            need(!even(ell) && !even(w), rules::LENGTH_PARITY, format!("rhombic unit dimensions must both be odd, got ({ell},{w})"));
        }
    }

    // Strand transitivity: rectangular units need coprime dimensions; rhombic
    // units need coprime odd dimensions, or halves that are coprime and of
    // opposite parity when both dimensions are even.
    if tag.is_rhombic() {
        if even(ell) && even(w) {
            let (he, hw) = (ell / 2, w / 2);
            need(gcd(he, hw) == 1, rules::HALVES_COPRIMALITY, format!("half-dimensions {he} and {hw} must be relatively prime"));
            need(even(he) != even(hw), rules::HALVES_PARITY, format!("half-dimensions {he} and {hw} must differ in parity"));
        } else {
            need(gcd(ell, w) == 1, rules::COPRIMALITY, format!("gcd({ell},{w}) = {} must be 1", gcd(ell, w)));
        }
    } else {
        need(gcd(ell, w) == 1, rules::COPRIMALITY, format!("gcd({ell},{w}) = {} must be 1", gcd(ell, w)));
    }

    // Size floors and excluded pairs.
    match tag {
        S1m | S2m | S3 | S7e => {
            need(w > 1, rules::MIN_WIDTH, "width 1 would force a twill with mirror symmetry".into());
        }
        S1e | S2e => {
            need(ell >= 3, rules::MIN_LENGTH, "length 1 pairs are too small".into());
            need((ell, w) != (3, 2), rules::EXCLUDED_PAIR, "(3,2) forces extra symmetry on the lattice unit".into());
        }
        S1o | S2o | S5o | S4o => {
            need(ell >= 3, rules::MIN_LENGTH, "odd-odd pairs start at {3,5}".into());
            need(w >= 3, rules::MIN_WIDTH, "odd-odd pairs start at {3,5}".into());
        }
        S4e => {
            need(ell >= 3, rules::MIN_LENGTH, "length 1 gives too much symmetry".into());
        }
        S5e => {
            need(ell >= 2, rules::MIN_LENGTH, "dimension 1 gives mirror twills".into());
            need(w >= 2, rules::MIN_WIDTH, "dimension 1 gives mirror twills".into());
        }
        S6 => {} // length 1 pairs with every even width
        S7o => {
            need(w >= 3, rules::MIN_WIDTH, "width must be at least 3".into());
        }
        S8e | S9 => {}
        S8o | S10 => {
            if w == 1 {
                need(ell >= 7, rules::MIN_LENGTH, "twill pairs with width 1 need length at least 7".into());
            }
            if ell == 1 {
                need(false, rules::TWILL_ORIENTATION, "pairs with 1 are used only as (length, 1)".into());
            }
            if ell > 1 && w > 1 {
                need(ell >= 3 && w >= 3, rules::MIN_LENGTH, "odd-odd pairs start at {3,5}".into());
            }
        }
    }

    ParamVerdict {
        params,
        violations: v,
    }
}

/// Shape of a lattice unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitShape {
    /// Rectangle with the length side along the axes.
    Rectangular,
    /// Rhomb whose diagonals run along and across the axes.
    Rhombic,
}

/// Descriptor of a lattice unit, dimensions in `δ` units.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeUnit {
    pub shape: UnitShape,
    pub length_delta: u32,
    pub width_delta: u32,
    /// Anchor point in quarter-cell coordinates.
    pub anchor: (i64, i64),
}

/// A fully determined symmetry group of one family: canonical generators, its
/// side-preserving translation lattice, the box size enumeration uses, and
/// the expected analysis figures.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub params: SpeciesParams,
    pub generators: Vec<SymmetryOp>,
    /// Pure (side-preserving) translation symmetries, in cell coordinates.
    pub lattice: Lattice,
    /// Strand period; also the side of the square period box.
    pub order: u32,
    /// Cell area of a translation fundamental domain.
    pub period_area: u32,
    pub genus_expected: GenusFlag,
    pub g1_unit: LatticeUnit,
    pub h1_unit: LatticeUnit,
}

/// Builds the group for structurally feasible parameters without applying
/// size floors or excluded pairs: used by the oracle checks that compare the
/// coprimality rules against actual strand transitivity.
pub fn raw_group(tag: SpeciesTag, ell: u32, w: u32) -> Option<GroupSpec> {
    use SpeciesTag::*;
    let l = ell as i64;
    let wi = w as i64;
    if ell == 0 || w == 0 {
        return None;
    }

    // Anchor offset of the first axis, in quarter units.
    let anchor = |mirror_position: bool| if mirror_position { 0 } else { 1 };

    let (generators, lattice): (Vec<SymmetryOp>, Lattice) = match tag {
        S1m | S1e | S1o | S2m | S2e | S2o => {
            let mirror_pos = matches!(tag, S1m | S2m);
            if mirror_pos != ell.is_multiple_of(2) {
                return None;
            }
            let side = if matches!(tag, S2m | S2e | S2o) {
                Side::Tau
            } else {
                Side::E
            };
            let c0 = anchor(mirror_pos);
            let glide = SymmetryOp::diagonal_glide(c0, l, side).ok()?;
            let perp = SymmetryOp::translation((wi, -wi), Side::E);
            (vec![glide, perp], Lattice::new((l, l), (wi, -wi)))
        }
        S3 | S4e | S4o => {
            let mirror_pos = tag == S3;
            if mirror_pos != ell.is_multiple_of(2) {
                return None;
            }
            let c0 = anchor(mirror_pos);
            let ge = SymmetryOp::diagonal_glide(c0, l, Side::E).ok()?;
            let gt = SymmetryOp::diagonal_glide(c0 + 2 * wi, l, Side::Tau).ok()?;
            (vec![ge, gt], Lattice::new((l, l), (2 * wi, -2 * wi)))
        }
        S5e | S5o => {
            let m = SymmetryOp::diagonal_mirror(0, Side::Tau).ok()?;
            let perp = SymmetryOp::translation((wi, -wi), Side::E);
            let along = SymmetryOp::translation((l, l), Side::E);
            (vec![m, perp, along], Lattice::new((l, l), (wi, -wi)))
        }
        S6 | S7e | S7o => {
            let m = SymmetryOp::diagonal_mirror(0, Side::Tau).ok()?;
            // Side-preserving glide along the mirror axis with glide ℓδ.
            let ge = SymmetryOp::diagonal_glide(0, 2 * l, Side::E).ok()?;
            let perp = SymmetryOp::translation((wi, -wi), Side::E);
            (vec![m, ge, perp], Lattice::new((2 * l, 2 * l), (wi, -wi)))
        }
        S8e | S8o => {
            if ell % 2 != w % 2 {
                return None;
            }
            let m = SymmetryOp::diagonal_mirror(0, Side::Tau).ok()?;
            let gt = SymmetryOp::diagonal_glide(wi, l, Side::Tau).ok()?;
            let s1 = ((l + wi) / 2, (l - wi) / 2);
            let s2 = ((l - wi) / 2, (wi + l) / 2);
            (vec![m, gt], Lattice::new(s1, s2))
        }
        S9 | S10 => {
            if ell % 2 != w % 2 {
                return None;
            }
            let m = SymmetryOp::diagonal_mirror(0, Side::Tau).ok()?;
            let ge = SymmetryOp::diagonal_glide(wi, l, Side::E).ok()?;
            (vec![m, ge], Lattice::new((l, l), (wi, -wi)))
        }
    };

    let lw = ell * w;
    let (order, period_area) = match tag {
        S1m | S1e | S1o | S2m | S2e | S2o | S5e | S5o => (2 * lw, 2 * lw),
        S3 => (2 * lw, 4 * lw),
        S4e | S4o | S7e | S7o => (4 * lw, 4 * lw),
        S6 => (2 * lw, 4 * lw),
        S8e | S8o => (lw, lw),
        S9 => (lw, 2 * lw),
        S10 => (2 * lw, 2 * lw),
    };
    let genus_expected = match tag {
        S1m | S1e | S1o | S2m | S2e | S2o | S5e | S5o | S8e | S8o => GenusFlag::I,
        S3 | S6 | S9 => GenusFlag::II,
        S4e | S4o | S7e | S7o | S10 => GenusFlag::Both,
    };

    let rect = |len: u32, wid: u32| LatticeUnit {
        shape: UnitShape::Rectangular,
        length_delta: len,
        width_delta: wid,
        anchor: (0, 0),
    };
    let rhomb = |len: u32, wid: u32| LatticeUnit {
        shape: UnitShape::Rhombic,
        length_delta: len,
        width_delta: wid,
        anchor: (0, 0),
    };
    let (g1_unit, h1_unit) = match tag {
        S1m | S1e | S1o | S2m | S2e | S2o | S5e | S5o => (rect(ell, w), rect(ell, w)),
        S3 | S4e | S4o => (rect(ell, w), rect(ell, 2 * w)),
        S6 | S7e | S7o => (rect(ell, w), rect(2 * ell, w)),
        S8e | S8o => (rhomb(ell, w), rhomb(ell, w)),
        S9 | S10 => (rhomb(ell, w), rect(ell, w)),
    };

    debug_assert_eq!(lattice.det(), period_area as i64);

    Some(GroupSpec {
        params: SpeciesParams::new(tag, ell, w),
        generators,
        lattice,
        order,
        period_area,
        genus_expected,
        g1_unit,
        h1_unit,
    })
}

/// Canonical symmetry group of a valid family.
pub fn group_for(params: SpeciesParams) -> Result<GroupSpec, SpeciesError> {
    let verdict = validate_params(params.tag, params.ell, params.w);
    if !verdict.is_ok() {
        return Err(SpeciesError::InvalidParams {
            params,
            violations: verdict.violations,
        });
    }
    let spec = raw_group(params.tag, params.ell, params.w)
        .expect("valid parameters are always structurally feasible");
    debug_assert_eq!(spec.lattice.min_period_x(), spec.order as i64);
    debug_assert_eq!(spec.lattice.min_period_y(), spec.order as i64);
    Ok(spec)
}

/// All species parameters that can produce prefabrics of order `N`.
///
/// Orders 4 and below are the domain of the exceptional prefabrics and are
/// rejected. Odd orders admit only species 8_o; even orders are matched
/// against the per-species order formulas, subtype by subtype.
pub fn candidates_for_order(n: u32) -> Result<Vec<SpeciesParams>, SpeciesError> {
    use SpeciesTag::*;
    if n <= 4 {
        return Err(SpeciesError::OrderOutOfScope(n));
    }
    let mut out: Vec<SpeciesParams> = Vec::new();
    let mut push = |tag: SpeciesTag, ell: u32, w: u32| {
        if validate_params(tag, ell, w).is_ok() {
            out.push(SpeciesParams::new(tag, ell, w));
        }
    };

    // Ordered factor pairs (a, b) with a * b = m.
    let factor_pairs = |m: u32| -> Vec<(u32, u32)> {
        (1..=m).filter(|a| m.is_multiple_of(*a)).map(|a| (a, m / a)).collect()
    };

    if n % 2 == 1 {
        for (a, b) in factor_pairs(n) {
            push(S8o, a, b);
        }
    } else {
        let m = n / 2;
        for (a, b) in factor_pairs(m) {
            // Species with order 2ℓw.
            push(S1m, a, b);
            push(S1e, a, b);
            push(S1o, a, b);
            push(S2m, a, b);
            push(S2e, a, b);
            push(S2o, a, b);
            push(S3, a, b);
            push(S5e, a, b);
            push(S5o, a, b);
            push(S6, a, b);
            push(S10, a, b);
        }
        if n.is_multiple_of(4) {
            for (a, b) in factor_pairs(n / 4) {
                // Species with order 4ℓw.
                push(S4e, a, b);
                push(S4o, a, b);
                push(S7e, a, b);
                push(S7o, a, b);
            }
        }
        if n.is_multiple_of(8) {
            for (a, b) in factor_pairs(n) {
                // Species with order ℓw.
                push(S8e, a, b);
                push(S9, a, b);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwillError {
    #[error("design is not a twill: no view has row offset 1")]
    NotATwill,
    #[error("design is a constant colouring, it has no over-and-under sequence")]
    Constant,
}

/// Name of a twill: the slash-separated run lengths of one strand's
/// over-and-under sequence, starting on a dark run, lexicographically minimal
/// over rotations and over the eight views.
pub fn twill_name(d: &Design) -> Result<String, TwillError> {
    use crate::design::ViewId;
    let n = d.size() as i64;
    if (0..n).all(|x| (0..n).all(|y| d.color(x, y) == d.color(0, 0))) {
        return Err(TwillError::Constant);
    }
    let mut best: Option<Vec<usize>> = None;
    for v in ViewId::ALL {
        let dv = d.view(v);
        let report = dv.genus();
        let is_twill = report.genus1_offsets.iter().any(|&s| s == 1 || s == n - 1);
        if !is_twill {
            continue;
        }
        let seq: Vec<bool> = (0..n).map(|x| dv.color(x, 0)).collect();
        let runs = min_runs(&seq);
        if best.as_ref().is_none_or(|b| runs < *b) {
            best = Some(runs);
        }
    }
    match best {
        Some(runs) => Ok(runs
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("/")),
        None => Err(TwillError::NotATwill),
    }
}

/// Minimal dark-start run list over all rotations of a cyclic sequence.
fn min_runs(seq: &[bool]) -> Vec<usize> {
    let n = seq.len();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        // A valid start opens a dark run.
        if !(seq[start] && !seq[(start + n - 1) % n]) {
            continue;
        }
        let mut runs = Vec::new();
        let mut i = 0;
        while i < n {
            let val = seq[(start + i) % n];
            let mut len = 0;
            while i < n && seq[(start + i) % n] == val {
                len += 1;
                i += 1;
            }
            runs.push(len);
        }
        if best.as_ref().is_none_or(|b| runs < *b) {
            best = Some(runs);
        }
    }
    best.expect("non-constant cyclic sequence has a dark-run start")
}

#[cfg(test)]
mod tests {
    use super::*;
    use SpeciesTag::*;

    #[test]
    fn tag_round_trip() {
        for t in SpeciesTag::ALL {
            assert_eq!(t.to_string().parse::<SpeciesTag>().unwrap(), t);
        }
    }

    #[test]
    fn validate_examples() {
        assert!(validate_params(S1m, 2, 3).is_ok());
        assert!(validate_params(S8e, 2, 4).is_ok());
        let v = validate_params(S8e, 6, 2);
        assert!(!v.is_ok());
        assert!(v.violations.iter().any(|r| r.rule == rules::HALVES_PARITY));
        let v = validate_params(S8o, 3, 3);
        assert!(v.violations.iter().any(|r| r.rule == rules::COPRIMALITY));
    }

    #[test]
    fn small_pair_exclusions() {
        assert!(!validate_params(S1m, 2, 1).is_ok()); // mirror twill
        assert!(!validate_params(S1e, 3, 2).is_ok()); // forces extra symmetry
        assert!(!validate_params(S2e, 3, 2).is_ok());
        assert!(validate_params(S4e, 3, 2).is_ok()); // allowed for species 4
        assert!(!validate_params(S1e, 1, 2).is_ok()); // too small
        assert!(!validate_params(S1o, 1, 3).is_ok());
        assert!(!validate_params(S4o, 1, 3).is_ok());
        assert!(validate_params(S6, 1, 2).is_ok()); // order-4 prefabric family
        assert!(validate_params(S7o, 1, 3).is_ok());
        assert!(!validate_params(S7o, 3, 1).is_ok());
        assert!(validate_params(S8o, 7, 1).is_ok());
        assert!(!validate_params(S8o, 5, 1).is_ok());
        assert!(!validate_params(S8o, 1, 7).is_ok()); // one way around only
        assert!(validate_params(S10, 7, 1).is_ok());
        assert!(!validate_params(S10, 5, 1).is_ok());
    }

    #[test]
    fn group_examples_follow_order_formulas() {
        let g = group_for(SpeciesParams::new(S1m, 2, 3)).unwrap();
        assert_eq!((g.order, g.period_area), (12, 12));
        let g = group_for(SpeciesParams::new(S3, 2, 3)).unwrap();
        assert_eq!((g.order, g.period_area), (12, 24));
        let g = group_for(SpeciesParams::new(S9, 2, 4)).unwrap();
        assert_eq!((g.order, g.period_area), (8, 16));
    }

    #[test]
    fn box_side_is_a_lattice_period_everywhere() {
        for tag in SpeciesTag::ALL {
            for ell in 1..=12u32 {
                for w in 1..=12u32 {
                    if !validate_params(tag, ell, w).is_ok() {
                        continue;
                    }
                    let g = group_for(SpeciesParams::new(tag, ell, w)).unwrap();
                    assert_eq!(
                        g.lattice.min_period_x(),
                        g.order as i64,
                        "{tag}({ell},{w}) horizontal period"
                    );
                    assert_eq!(
                        g.lattice.min_period_y(),
                        g.order as i64,
                        "{tag}({ell},{w}) vertical period"
                    );
                    assert_eq!(g.lattice.det(), g.period_area as i64);
                }
            }
        }
    }

    #[test]
    fn glide_generators_match_axis_position() {
        // A diagonal glide generator sits in mirror position exactly when its
        // glide is an even number of β steps.
        for tag in SpeciesTag::ALL {
            for ell in 1..=8u32 {
                for w in 1..=8u32 {
                    if !validate_params(tag, ell, w).is_ok() {
                        continue;
                    }
                    let g = group_for(SpeciesParams::new(tag, ell, w)).unwrap();
                    for op in &g.generators {
                        let class = op.classify();
                        if let (Some(mp), Some(k)) = (class.mirror_position, class.glide_in_beta) {
                            if k != 0 {
                                assert_eq!(mp, k % 2 == 0, "{tag}({ell},{w}) {class}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn candidates_for_small_orders() {
        assert!(candidates_for_order(4).is_err());
        assert!(candidates_for_order(5).unwrap().is_empty());
        let c7 = candidates_for_order(7).unwrap();
        assert_eq!(c7, vec![SpeciesParams::new(S8o, 7, 1)]);
    }

    #[test]
    fn candidates_for_order_12() {
        let c = candidates_for_order(12).unwrap();
        let mut expected = vec![
            SpeciesParams::new(S1m, 2, 3),
            SpeciesParams::new(S2m, 2, 3),
            SpeciesParams::new(S3, 2, 3),
            SpeciesParams::new(S5e, 2, 3),
            SpeciesParams::new(S5e, 3, 2),
            SpeciesParams::new(S6, 1, 6),
            SpeciesParams::new(S6, 3, 2),
            SpeciesParams::new(S7o, 1, 3),
        ];
        expected.sort();
        assert_eq!(c, expected);
    }

    #[test]
    fn candidates_for_order_21_and_30() {
        let c = candidates_for_order(21).unwrap();
        let mut expected = vec![
            SpeciesParams::new(S8o, 3, 7),
            SpeciesParams::new(S8o, 7, 3),
            SpeciesParams::new(S8o, 21, 1),
        ];
        expected.sort();
        assert_eq!(c, expected);

        let c = candidates_for_order(30).unwrap();
        for p in [
            SpeciesParams::new(S1o, 3, 5),
            SpeciesParams::new(S1o, 5, 3),
            SpeciesParams::new(S2o, 3, 5),
            SpeciesParams::new(S5o, 5, 3),
            SpeciesParams::new(S10, 3, 5),
            SpeciesParams::new(S10, 5, 3),
            SpeciesParams::new(S10, 15, 1),
        ] {
            assert!(c.contains(&p), "missing {p}");
        }
        assert!(!c.iter().any(|p| p.tag == S1m || p.tag == S1e));
    }

    #[test]
    fn plain_weave_twill_name() {
        assert_eq!(twill_name(&Design::plain_weave()).unwrap(), "1/1");
    }

    #[test]
    fn twill_name_rejects_non_twills() {
        let d = Design::from_rows(&["110", "110", "001"]);
        assert!(twill_name(&d).is_err());
        assert_eq!(
            twill_name(&Design::trivial(3, true)),
            Err(TwillError::Constant)
        );
    }
}
