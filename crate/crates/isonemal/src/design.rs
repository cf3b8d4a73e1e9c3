//! Periodic two-layer designs stored as square binary grids.
//!
//! A dark cell (`true`, `'1'` in files) means the warp is uppermost at that
//! crossing. The grid is fully periodic: `color(x, y)` is read modulo the box
//! side `n` in both directions, so translations by `(n, 0)` and `(0, n)` are
//! symmetries by construction. Column index `x` grows to the right along the
//! wefts, row index `y` grows upward along the warps.

use std::fmt;

use thiserror::Error;

/// Which side of the fabric the viewer is on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViewSide {
    Obverse,
    Reverse,
}

/// Compass position of the viewer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Compass {
    South,
    North,
    East,
    West,
}

/// One of the eight viewpoints of a fabric.
///
/// The obverse-south view is the canonical one. The reverse is drawn with the
/// mirror convention: it is the colour-complement of the obverse seen from
/// the same compass point, which keeps axis slopes unchanged. East and west
/// views rotate the grid by a quarter turn and complement colours because the
/// normal colouring is relative to the view (warps as seen are dark).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ViewId {
    pub side: ViewSide,
    pub compass: Compass,
}

impl ViewId {
    pub const ALL: [ViewId; 8] = [
        ViewId::new(ViewSide::Obverse, Compass::South),
        ViewId::new(ViewSide::Obverse, Compass::North),
        ViewId::new(ViewSide::Obverse, Compass::East),
        ViewId::new(ViewSide::Obverse, Compass::West),
        ViewId::new(ViewSide::Reverse, Compass::South),
        ViewId::new(ViewSide::Reverse, Compass::North),
        ViewId::new(ViewSide::Reverse, Compass::East),
        ViewId::new(ViewSide::Reverse, Compass::West),
    ];

    pub const fn new(side: ViewSide, compass: Compass) -> Self {
        ViewId { side, compass }
    }

    /// Quarter turns (0..4) and whether colours are complemented.
    ///
    /// The eight views form a group isomorphic to ℤ₄ × ℤ₂ under composition:
    /// the ℤ₄ part is generated by the east view (quarter turn with
    /// complement), the ℤ₂ part by the reverse side (plain complement).
    pub fn transform(&self) -> (u8, bool) {
        let (rot, mut comp) = match self.compass {
            Compass::South => (0, false),
            Compass::East => (1, true),
            Compass::North => (2, false),
            Compass::West => (3, true),
        };
        if self.side == ViewSide::Reverse {
            comp = !comp;
        }
        (rot, comp)
    }
}

impl fmt::Display for ViewId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            ViewSide::Obverse => "obverse",
            ViewSide::Reverse => "reverse",
        };
        let compass = match self.compass {
            Compass::South => "south",
            Compass::North => "north",
            Compass::East => "east",
            Compass::West => "west",
        };
        write!(f, "{side}-{compass}")
    }
}

/// Row-to-row structure of a design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenusFlag {
    /// Twill/twillin: each row is the one below shifted by a constant offset.
    I,
    /// Each row is the one below shifted and colour-complemented.
    II,
    /// Both tests pass (balanced designs such as plain weave).
    Both,
    Other,
}

impl fmt::Display for GenusFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusFlag::I => write!(f, "I"),
            GenusFlag::II => write!(f, "II"),
            GenusFlag::Both => write!(f, "I+II"),
            GenusFlag::Other => write!(f, "other"),
        }
    }
}

/// Genus verdict together with the offsets that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub flag: GenusFlag,
    /// Offsets s with color(x, y+1) = color(x−s, y) for all cells.
    pub genus1_offsets: Vec<i64>,
    /// Offsets s with color(x, y+1) = ¬color(x−s, y) for all cells.
    pub genus2_offsets: Vec<i64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("line {line}: empty input, expected `order <n>` header")]
    Empty { line: usize },
    #[error("line {line}: expected `order <n>` header")]
    BadHeader { line: usize },
    #[error("line {line}: order must be a positive integer")]
    BadOrder { line: usize },
    #[error("line {line}: ragged row, expected {expected} characters, got {got}")]
    RaggedRow {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: invalid character {ch:?}, rows use only '0' and '1'")]
    BadChar { line: usize, ch: char },
    #[error("line {line}: expected {expected} rows, got {got}")]
    MissingRows {
        line: usize,
        expected: usize,
        got: usize,
    },
}

/// A doubly periodic design in an `n`×`n` period box.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Design {
    n: usize,
    /// Row-major, index `x + y * n`.
    cells: Vec<bool>,
}

impl Design {
    /// Builds a design from a colouring function on the period box.
    pub fn from_fn(n: usize, f: impl Fn(i64, i64) -> bool) -> Self {
        assert!(n >= 1);
        let mut cells = vec![false; n * n];
        for y in 0..n {
            for x in 0..n {
                cells[x + y * n] = f(x as i64, y as i64);
            }
        }
        Design { n, cells }
    }

    /// Rows given top-down (first row is y = n−1), as in the file format.
    pub fn from_rows(rows: &[&str]) -> Self {
        let n = rows.len();
        assert!(n >= 1 && rows.iter().all(|r| r.len() == n));
        Design::from_fn(n, |x, y| {
            rows[n - 1 - y as usize].as_bytes()[x as usize] == b'1'
        })
    }

    /// The 2×2 checkerboard, dark top-left: `order 2 / 10 / 01` in file form.
    pub fn plain_weave() -> Self {
        Design::from_fn(2, |x, y| (x + y) % 2 == 1)
    }

    /// The trivial prefabric: every crossing alike.
    pub fn trivial(n: usize, dark: bool) -> Self {
        Design::from_fn(n, |_, _| dark)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn color(&self, x: i64, y: i64) -> bool {
        let n = self.n as i64;
        let x = x.rem_euclid(n) as usize;
        let y = y.rem_euclid(n) as usize;
        self.cells[x + y * self.n]
    }

    /// Pointwise colour complement; an involution.
    pub fn complement(&self) -> Design {
        Design {
            n: self.n,
            cells: self.cells.iter().map(|&b| !b).collect(),
        }
    }

    /// Re-stores the design in a box `k` times larger.
    pub fn tile(&self, k: usize) -> Design {
        assert!(k >= 1);
        Design::from_fn(self.n * k, |x, y| self.color(x, y))
    }

    /// Quarter-turn counterclockwise (about the box so the result is again a
    /// design in the same box size).
    fn rotate90(&self) -> Design {
        let n = self.n as i64;
        Design::from_fn(self.n, |x, y| self.color(y, n - 1 - x))
    }

    /// The design as seen from viewpoint `v`.
    pub fn view(&self, v: ViewId) -> Design {
        let (rot, comp) = v.transform();
        let mut d = self.clone();
        for _ in 0..rot {
            d = d.rotate90();
        }
        if comp {
            d = d.complement();
        }
        d
    }

    /// Minimal horizontal translation period.
    pub fn min_period_x(&self) -> usize {
        'outer: for p in 1..=self.n {
            if !self.n.is_multiple_of(p) {
                continue;
            }
            for y in 0..self.n {
                for x in 0..self.n {
                    if self.cells[x + y * self.n]
                        != self.cells[(x + p) % self.n + y * self.n]
                    {
                        continue 'outer;
                    }
                }
            }
            return p;
        }
        self.n
    }

    /// Minimal vertical translation period.
    pub fn min_period_y(&self) -> usize {
        'outer: for p in 1..=self.n {
            if !self.n.is_multiple_of(p) {
                continue;
            }
            for y in 0..self.n {
                for x in 0..self.n {
                    if self.cells[x + y * self.n]
                        != self.cells[x + ((y + p) % self.n) * self.n]
                    {
                        continue 'outer;
                    }
                }
            }
            return p;
        }
        self.n
    }

    /// Minimal common horizontal/vertical translation period. For isonemal
    /// designs this equals the period along every strand.
    pub fn order(&self) -> usize {
        let h = self.min_period_x();
        let v = self.min_period_y();
        h / gcd(h, v) * v
    }

    /// Row-to-row shift structure, with witnessing offsets.
    pub fn genus(&self) -> GenusReport {
        let n = self.n as i64;
        let mut g1 = Vec::new();
        let mut g2 = Vec::new();
        for s in 0..n {
            let mut plain = true;
            let mut comp = true;
            'scan: for y in 0..n {
                for x in 0..n {
                    let up = self.color(x, y + 1);
                    let base = self.color(x - s, y);
                    if up != base {
                        plain = false;
                    }
                    if up == base {
                        comp = false;
                    }
                    if !plain && !comp {
                        break 'scan;
                    }
                }
            }
            if plain {
                g1.push(s);
            }
            if comp {
                g2.push(s);
            }
        }
        let flag = match (!g1.is_empty(), !g2.is_empty()) {
            (true, true) => GenusFlag::Both,
            (true, false) => GenusFlag::I,
            (false, true) => GenusFlag::II,
            (false, false) => GenusFlag::Other,
        };
        GenusReport {
            flag,
            genus1_offsets: g1,
            genus2_offsets: g2,
        }
    }

    /// Parses the design file format: an `order <n>` header, then `n` rows of
    /// `n` characters from {0, 1}, top row first. Lines starting with `#` are
    /// ignored.
    pub fn parse(text: &str) -> Result<Design, DesignError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.starts_with('#') && !l.is_empty());
        let (header_line, header) = lines.next().ok_or(DesignError::Empty { line: 1 })?;
        let n: usize = match header.strip_prefix("order") {
            Some(rest) => rest
                .trim()
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or(DesignError::BadOrder { line: header_line })?,
            None => return Err(DesignError::BadHeader { line: header_line }),
        };
        let mut rows: Vec<Vec<bool>> = Vec::with_capacity(n);
        let mut last_line = header_line;
        for (line, text) in lines {
            last_line = line;
            if rows.len() == n {
                return Err(DesignError::MissingRows {
                    line,
                    expected: n,
                    got: n + 1,
                });
            }
            if text.len() != n {
                return Err(DesignError::RaggedRow {
                    line,
                    expected: n,
                    got: text.len(),
                });
            }
            let mut row = Vec::with_capacity(n);
            for ch in text.chars() {
                match ch {
                    '0' => row.push(false),
                    '1' => row.push(true),
                    _ => return Err(DesignError::BadChar { line, ch }),
                }
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(DesignError::MissingRows {
                line: last_line,
                expected: n,
                got: rows.len(),
            });
        }
        Ok(Design::from_fn(n, |x, y| {
            rows[n - 1 - y as usize][x as usize]
        }))
    }

    /// Canonical text form; the inverse of [`Design::parse`]. Emits the top
    /// row (largest y) first.
    pub fn serialize(&self) -> String {
        let mut out = format!("order {}\n", self.n);
        for y in (0..self.n).rev() {
            for x in 0..self.n {
                out.push(if self.cells[x + y * self.n] { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    /// Packed row-major bits, for hashing and canonical forms.
    pub(crate) fn bit_at(&self, x: usize, y: usize) -> bool {
        self.cells[x + y * self.n]
    }
}

impl fmt::Debug for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Design(n={})", self.n)?;
        for y in (0..self.n).rev() {
            writeln!(f)?;
            for x in 0..self.n {
                write!(f, "{}", if self.cells[x + y * self.n] { '#' } else { '.' })?;
            }
        }
        Ok(())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_weave_order_is_two() {
        assert_eq!(Design::plain_weave().order(), 2);
    }

    #[test]
    fn tiling_preserves_order() {
        let d = Design::from_rows(&["100", "011", "101"]);
        for k in [2, 3] {
            assert_eq!(d.tile(k).order(), d.order());
        }
    }

    #[test]
    fn plain_weave_genus_is_both() {
        assert_eq!(Design::plain_weave().genus().flag, GenusFlag::Both);
    }

    #[test]
    fn trivial_genus_is_plain_shift_only() {
        // Constant colourings satisfy the genus-I test for every offset but
        // can never satisfy the complementing genus-II test.
        let report = Design::trivial(3, true).genus();
        assert_eq!(report.flag, GenusFlag::I);
        assert_eq!(report.genus1_offsets, vec![0, 1, 2]);
        assert!(report.genus2_offsets.is_empty());
    }

    #[test]
    fn offset_five_twillin_is_genus_one() {
        // Twillin of order 12 with offset 5 built from a fixed strand
        // sequence; rows climb by 5 cells per row.
        let seq = [
            false, false, false, false, true, false, true, true, false, true, true, true,
        ];
        let d = Design::from_fn(12, |x, y| seq[(x - 5 * y).rem_euclid(12) as usize]);
        let report = d.genus();
        assert_eq!(report.flag, GenusFlag::I);
        assert_eq!(report.genus1_offsets, vec![5]);
    }

    #[test]
    fn eight_views_of_a_generic_twillin_are_distinct() {
        let seq = [
            false, false, false, false, true, false, true, true, false, true, true, true,
        ];
        let d = Design::from_fn(12, |x, y| seq[(x - 5 * y).rem_euclid(12) as usize]);
        let views: Vec<Design> = ViewId::ALL.iter().map(|&v| d.view(v)).collect();
        for i in 0..8 {
            for j in (i + 1)..8 {
                assert_ne!(views[i], views[j], "views {i} and {j} coincide");
            }
        }
    }

    #[test]
    fn obverse_south_is_identity() {
        let d = Design::from_rows(&["10", "00"]);
        assert_eq!(d.view(ViewId::new(ViewSide::Obverse, Compass::South)), d);
    }

    #[test]
    fn reverse_south_is_complement() {
        let d = Design::plain_weave();
        let r = d.view(ViewId::new(ViewSide::Reverse, Compass::South));
        assert_eq!(r, d.complement());
        // For the checkerboard that is also a one-cell translate.
        assert_eq!(r, Design::from_fn(2, |x, y| d.color(x + 1, y)));
    }

    #[test]
    fn complement_is_involution() {
        let d = Design::from_rows(&["110", "010", "001"]);
        assert_eq!(d.complement().complement(), d);
        assert_eq!(
            Design::trivial(2, true).complement(),
            Design::trivial(2, false)
        );
    }

    #[test]
    fn view_composition_matches_group_law() {
        // Applying view w to the result of view v equals the view whose
        // transform is the product: rotations add mod 4, complements xor.
        let seq = [
            false, false, false, true, true, false, true, true, false, true, true, true,
        ];
        let d = Design::from_fn(12, |x, y| seq[(x - 5 * y).rem_euclid(12) as usize]);
        for &v in &ViewId::ALL {
            for &w in &ViewId::ALL {
                let (rv, cv) = v.transform();
                let (rw, cw) = w.transform();
                let (rot, comp) = ((rv + rw) % 4, cv != cw);
                let composed = ViewId::ALL
                    .iter()
                    .copied()
                    .find(|u| u.transform() == (rot, comp))
                    .unwrap();
                assert_eq!(d.view(v).view(w), d.view(composed));
            }
        }
    }

    #[test]
    fn reverse_twice_is_identity() {
        let d = Design::from_rows(&["110", "010", "001"]);
        let r = ViewId::new(ViewSide::Reverse, Compass::South);
        assert_eq!(d.view(r).view(r), d);
    }

    #[test]
    fn parse_plain_weave() {
        let d = Design::parse("order 2\n10\n01\n").unwrap();
        assert_eq!(d, Design::plain_weave());
    }

    #[test]
    fn serialize_parse_round_trip() {
        let d = Design::from_rows(&["1101", "0010", "1110", "0001"]);
        let text = d.serialize();
        assert_eq!(Design::parse(&text).unwrap(), d);
        assert_eq!(Design::parse(&text).unwrap().serialize(), text);
    }

    #[test]
    fn parse_ragged_row_reports_line() {
        let err = Design::parse("order 3\n101\n10\n111\n").unwrap_err();
        assert_eq!(
            err,
            DesignError::RaggedRow {
                line: 3,
                expected: 3,
                got: 2
            }
        );
    }

    #[test]
    fn parse_rejects_bad_characters_and_headers() {
        assert!(matches!(
            Design::parse("order 2\n10\n0x\n"),
            Err(DesignError::BadChar { line: 3, ch: 'x' })
        ));
        assert!(matches!(
            Design::parse(""),
            Err(DesignError::Empty { .. })
        ));
        assert!(matches!(
            Design::parse("size 2\n10\n01\n"),
            Err(DesignError::BadHeader { line: 1 })
        ));
        assert!(matches!(
            Design::parse("order 2\n10\n"),
            Err(DesignError::MissingRows { .. })
        ));
    }

    #[test]
    fn comments_are_ignored() {
        let d = Design::parse("# plain weave\norder 2\n# rows\n10\n01\n").unwrap();
        assert_eq!(d, Design::plain_weave());
    }

    #[test]
    fn genus_invariant_under_translation() {
        let seq = [
            true, false, false, true, true, false, true, false, false, true, true, true,
        ];
        let d = Design::from_fn(12, |x, y| seq[(x - 5 * y).rem_euclid(12) as usize]);
        let base = d.genus();
        for (dx, dy) in [(1, 0), (0, 1), (3, 7)] {
            let t = Design::from_fn(12, |x, y| d.color(x + dx, y + dy));
            assert_eq!(t.genus(), base);
        }
    }
}
