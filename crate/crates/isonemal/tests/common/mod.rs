#![allow(dead_code)] // each test target uses its own slice of the oracles

//! Independent oracles for the verification suites: raw exhaustive symmetry
//! scanning and strand-orbit searches that share no shortcuts with the
//! library's own analysis paths.

use isonemal::*;

/// Every symmetry of the design, by brute force: all eight linear parts, both
/// sides, every cell shift inside the period box, each verified over every
/// cell of the box.
pub fn raw_symmetry_ops(d: &Design) -> Vec<SymmetryOp> {
    let n = d.size() as i64;
    let mut out = Vec::new();
    for linear in Linear::ALL {
        for side in [Side::E, Side::Tau] {
            for sy in 0..n {
                for sx in 0..n {
                    let op =
                        SymmetryOp::new(linear, QCoord::new(2 * sx, 2 * sy), side).unwrap();
                    if enumeration::is_symmetry_of(&op, d) {
                        out.push(op);
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum OracleStrand {
    Warp(i64),
    Weft(i64),
}

/// Image of a strand under an operation, derived only from point images.
pub fn oracle_strand_image(op: &SymmetryOp, s: OracleStrand, n: i64) -> OracleStrand {
    let (p, dir) = match s {
        OracleStrand::Warp(x) => (QCoord::new(2 * x + 1, 1), QCoord::new(0, 2)),
        OracleStrand::Weft(y) => (QCoord::new(1, 2 * y + 1), QCoord::new(2, 0)),
    };
    let p2 = op.apply_point(p);
    let q2 = op.apply_point(QCoord::new(p.x + dir.x, p.y + dir.y));
    if q2.x == p2.x {
        OracleStrand::Warp(((p2.x - 1) / 2).rem_euclid(n))
    } else {
        OracleStrand::Weft(((p2.y - 1) / 2).rem_euclid(n))
    }
}

/// Breadth-first strand-orbit search over an explicit op list.
pub fn strands_transitive(ops: &[SymmetryOp], n: i64) -> bool {
    let idx = |s: OracleStrand| -> usize {
        match s {
            OracleStrand::Warp(x) => x as usize,
            OracleStrand::Weft(y) => (n + y) as usize,
        }
    };
    let mut seen = vec![false; 2 * n as usize];
    let mut stack = vec![OracleStrand::Warp(0)];
    seen[0] = true;
    while let Some(s) = stack.pop() {
        for op in ops {
            for img in [
                oracle_strand_image(op, s, n),
                oracle_strand_image(&op.invert(), s, n),
            ] {
                let i = idx(img);
                if !seen[i] {
                    seen[i] = true;
                    stack.push(img);
                }
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Isonemality by raw scan: no lattice shortcuts anywhere.
pub fn oracle_is_isonemal(d: &Design) -> bool {
    let ops = raw_symmetry_ops(d);
    strands_transitive(&ops, d.size() as i64)
}

/// Strand transitivity of a species group itself, independent of any design:
/// generators plus the lattice translations, acting on strand residues.
pub fn group_strands_transitive(spec: &species::GroupSpec) -> bool {
    let mut ops = spec.generators.clone();
    for v in spec.lattice.basis() {
        ops.push(SymmetryOp::translation(v, Side::E));
    }
    let n = lcm(
        spec.lattice.min_period_x(),
        spec.lattice.min_period_y(),
    );
    strands_transitive(&ops, n)
}

fn lcm(a: i64, b: i64) -> i64 {
    let g = gcd(a, b);
    a / g * b
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
