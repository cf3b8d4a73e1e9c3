//! Family enumeration by orbit colouring.
//!
//! Enumerating all designs with a given symmetry group works on one
//! fundamental domain of the group's translation lattice. The group action
//! partitions the domain cells into orbits; colour-reversing elements force
//! complementary colours inside an orbit, so each orbit contributes one free
//! colour bit. Every assignment of the free bits yields a candidate design;
//! assignments that acquire symmetries outside the intended group (including
//! translations finer than the lattice, which would shrink the order) are
//! rejected, and the survivors are deduplicated up to the configured
//! equivalence.
//!
//! Extra-symmetry rejection happens at the orbit level: every grid operation
//! that could be a symmetry of some colouring reduces to a linear system over
//! GF(2) on the free bits, precomputed once per family. A colouring admits
//! that operation exactly when it satisfies the system, so the scan over
//! `2^free_count` colourings only evaluates a few parity checks per candidate
//! operation.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::design::Design;
use crate::isometry::{AxisSlope, Cell, Lattice, Linear, QCoord, Side, SymmetryOp};
use crate::species::GroupSpec;

/// Orbit partition of a translation fundamental domain under the full group.
#[derive(Clone, Debug)]
pub struct OrbitSystem {
    /// Cells of one fundamental domain, ordered by (y, x).
    pub domain: Vec<Cell>,
    /// Orbit class of each domain cell, indexed like `domain`. Classes are
    /// numbered by the reading-order position of their first cell.
    pub class_of: Vec<u32>,
    /// Sign of each cell relative to its orbit representative: `-1` means the
    /// cell is forced to the complementary colour.
    pub sign_of: Vec<i8>,
    pub free_count: usize,
    /// Some group element maps a cell to itself with colour sign −1; no
    /// colouring is compatible and enumeration yields nothing.
    pub contradictory: bool,
}

/// Which identifications are applied when deduplicating enumerated designs.
///
/// Translations are always identified. `use_views` adds the four compass
/// views (quarter-turns, colour-complemented for the warp/weft-swapping
/// ones); `use_complement` adds the reverse side, i.e. plain colour
/// complement, which together with the compass views closes the full group of
/// eight views.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivalencePolicy {
    pub use_views: bool,
    pub use_complement: bool,
}

impl Default for EquivalencePolicy {
    fn default() -> Self {
        EquivalencePolicy {
            use_views: true,
            use_complement: false,
        }
    }
}

impl EquivalencePolicy {
    pub fn label(&self) -> String {
        let mut parts = vec!["translations"];
        if self.use_views {
            parts.push("views");
        }
        if self.use_complement {
            parts.push("complement");
        }
        parts.join("+")
    }

    /// The design transforms of the policy besides translations, as
    /// (linear part, complement) pairs.
    pub(crate) fn transforms(&self) -> Vec<(Linear, bool)> {
        transform_set(self.use_views, self.use_complement)
    }
}

/// Design transforms of a policy. A viewpoint change or a physical turn of
/// the fabric acts on the design by one of the eight grid linears, with a
/// colour complement whenever exactly one of {warps become wefts, the other
/// side is seen} holds.
pub(crate) fn transform_set(views: bool, complement: bool) -> Vec<(Linear, bool)> {
    let linears: &[Linear] = if views {
        &Linear::ALL
    } else {
        &[Linear::Id]
    };
    let comps: &[bool] = if complement { &[false, true] } else { &[false] };
    let mut out = Vec::new();
    for &l in linears {
        let base = l.swaps_axes() != l.is_reflection();
        for &c in comps {
            out.push((l, base != c));
        }
    }
    out
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("family has {free_count} free orbits; 2^{free_count} colourings exceed the cap of 2^{cap_bits}")]
    CapExceeded { free_count: usize, cap_bits: u32 },
}

/// Tunables for enumeration.
#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    /// Families with more than `2^cap_bits` colourings are refused.
    pub cap_bits: u32,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { cap_bits: 24 }
    }
}

/// One enumerated member of a family.
#[derive(Clone, Debug)]
pub struct FamilyDesign {
    pub design: Design,
    pub hangs: bool,
}

fn cell_shift(op: &SymmetryOp) -> (i64, i64) {
    (op.shift.x / 2, op.shift.y / 2)
}

/// Key of an operation modulo a translation lattice.
fn op_key(op: &SymmetryOp, lattice: &Lattice) -> (Linear, Side, (i64, i64)) {
    (op.linear, op.side, lattice.reduce(cell_shift(op)))
}

/// Closure of the generators modulo the lattice: the finitely many point
/// classes of the group.
fn group_mod_lattice(spec: &GroupSpec) -> Vec<SymmetryOp> {
    let lat = &spec.lattice;
    let reduce = |op: &SymmetryOp| -> SymmetryOp {
        let (sx, sy) = lat.reduce(cell_shift(op));
        SymmetryOp::new(op.linear, QCoord::new(2 * sx, 2 * sy), op.side).unwrap()
    };
    let mut seen: HashMap<(Linear, Side, (i64, i64)), SymmetryOp> = HashMap::new();
    let id = SymmetryOp::identity();
    seen.insert(op_key(&id, lat), id);
    let mut frontier = vec![id];
    while let Some(op) = frontier.pop() {
        for g in &spec.generators {
            for next in [g.compose(&op), g.invert().compose(&op)] {
                let next = reduce(&next);
                let key = op_key(&next, lat);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                    e.insert(next);
                    frontier.push(next);
                }
            }
        }
    }
    let mut ops: Vec<SymmetryOp> = seen.into_values().collect();
    ops.sort();
    ops
}

/// Orbit partition of the lattice fundamental domain under the full group.
pub fn orbits(spec: &GroupSpec) -> OrbitSystem {
    FamilyContext::new(spec).orbit_system()
}

/// The group's point classes modulo its translation lattice.
pub fn group_cosets(spec: &GroupSpec) -> Vec<SymmetryOp> {
    group_mod_lattice(spec)
}

/// Streaming access to a family's enumeration: the surviving colourings as
/// bit vectors plus a builder, so sweeps over large families can visit one
/// design at a time instead of materializing millions of grids.
pub struct FamilyEnumeration {
    ctx: FamilyContext,
    box_map: Vec<(u32, bool)>,
}

impl FamilyEnumeration {
    pub fn new(spec: &GroupSpec) -> Self {
        let ctx = FamilyContext::new(spec);
        let box_map = ctx.box_map();
        FamilyEnumeration { ctx, box_map }
    }

    pub fn free_count(&self) -> usize {
        self.ctx.free
    }

    /// Surviving colourings, deduplicated under the policy, sorted ascending.
    pub fn colorings(
        &self,
        policy: &EquivalencePolicy,
        opts: &EnumOptions,
    ) -> Result<Vec<u64>, EnumError> {
        scan_colorings(&self.ctx, policy, opts)
    }

    pub fn design(&self, bits: u64) -> Design {
        self.ctx.build_design(bits, &self.box_map)
    }
}

struct UnionFind {
    parent: Vec<u32>,
    /// Parity of the sign relation to the parent (1 = complementary).
    parity: Vec<u8>,
    conflict: bool,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            parity: vec![0; n],
            conflict: false,
        }
    }

    fn find(&mut self, i: u32) -> (u32, u8) {
        if self.parent[i as usize] == i {
            return (i, 0);
        }
        let (root, p) = self.find(self.parent[i as usize]);
        let total = p ^ self.parity[i as usize];
        self.parent[i as usize] = root;
        self.parity[i as usize] = total;
        (root, total)
    }

    fn union(&mut self, a: u32, b: u32, parity: u8) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != parity {
                self.conflict = true;
            }
            return;
        }
        self.parent[rb as usize] = ra;
        self.parity[rb as usize] = pa ^ parity ^ pb;
    }
}

/// A candidate extra operation reduced to a GF(2) system on the free bits.
struct RejectSystem {
    rows: Vec<(u64, bool)>,
}

#[inline]
fn satisfies(x: u64, sys: &RejectSystem) -> bool {
    sys.rows
        .iter()
        .all(|&(m, r)| ((x & m).count_ones() & 1 == 1) == r)
}

/// A normalizer transform's induced action on colouring bit vectors,
/// compiled to byte-sliced lookup tables.
struct BitTransform {
    tables: Vec<[u64; 256]>,
}

impl BitTransform {
    fn compile(src: &[u32], flip: &[bool]) -> Self {
        let free = src.len();
        let chunks = free.div_ceil(8);
        let mut tables = vec![[0u64; 256]; chunks.max(1)];
        // Bake the flips into the low chunk's table.
        let mut flipmask = 0u64;
        for (k, &f) in flip.iter().enumerate() {
            if f {
                flipmask |= 1 << k;
            }
        }
        #[allow(clippy::needless_range_loop)] // b is the byte value, not just an index
        for (c, table) in tables.iter_mut().enumerate() {
            for b in 0..256usize {
                let mut y = if c == 0 { flipmask } else { 0 };
                for i in 0..8 {
                    let bit_index = c * 8 + i;
                    if b & (1 << i) != 0 {
                        // source bit bit_index is set: toggle every target
                        // bit reading from it
                        for (k, &s) in src.iter().enumerate() {
                            if s as usize == bit_index {
                                y ^= 1 << k;
                            }
                        }
                    }
                }
                table[b] = y;
            }
        }
        BitTransform { tables }
    }

    #[inline]
    fn apply(&self, x: u64) -> u64 {
        let mut y = 0u64;
        for (c, table) in self.tables.iter().enumerate() {
            y ^= table[((x >> (8 * c)) & 0xff) as usize];
        }
        y
    }
}

/// Everything precomputed for enumerating one family.
struct FamilyContext {
    spec: GroupSpec,
    domain: Vec<Cell>,
    index: HashMap<(i64, i64), u32>,
    class_of: Vec<u32>,
    neg: Vec<bool>,
    class_rep: Vec<u32>,
    free: usize,
    contradictory: bool,
}

impl FamilyContext {
    fn new(spec: &GroupSpec) -> Self {
        let lat = &spec.lattice;
        let domain = lat.domain();
        let index: HashMap<(i64, i64), u32> = domain
            .iter()
            .enumerate()
            .map(|(i, c)| ((c.x, c.y), i as u32))
            .collect();
        let look = |c: Cell| -> u32 {
            let r = lat.reduce_cell(c);
            index[&(r.x, r.y)]
        };

        let mut uf = UnionFind::new(domain.len());
        for g in &spec.generators {
            let parity = if g.color_sign() < 0 { 1 } else { 0 };
            for (i, &c) in domain.iter().enumerate() {
                let j = look(g.apply_cell(c));
                uf.union(i as u32, j, parity);
            }
        }
        let contradictory = uf.conflict;

        // Number classes by first appearance in reading order; normalize
        // signs so representatives carry +1.
        let mut class_of = vec![u32::MAX; domain.len()];
        let mut neg = vec![false; domain.len()];
        let mut class_rep: Vec<u32> = Vec::new();
        let mut root_class: HashMap<u32, u32> = HashMap::new();
        let mut root_par: HashMap<u32, u8> = HashMap::new();
        for i in 0..domain.len() as u32 {
            let (root, p) = uf.find(i);
            let cls = *root_class.entry(root).or_insert_with(|| {
                class_rep.push(i);
                root_par.insert(root, p);
                (class_rep.len() - 1) as u32
            });
            class_of[i as usize] = cls;
            neg[i as usize] = (p ^ root_par[&root]) == 1;
        }
        let free = class_rep.len();

        FamilyContext {
            spec: spec.clone(),
            domain,
            index,
            class_of,
            neg,
            class_rep,
            free,
            contradictory,
        }
    }

    fn orbit_system(&self) -> OrbitSystem {
        OrbitSystem {
            domain: self.domain.clone(),
            class_of: self.class_of.clone(),
            sign_of: self.neg.iter().map(|&n| if n { -1 } else { 1 }).collect(),
            free_count: self.free,
            contradictory: self.contradictory,
        }
    }

    fn domain_index(&self, c: Cell) -> u32 {
        let r = self.spec.lattice.reduce_cell(c);
        self.index[&(r.x, r.y)]
    }

    /// Builds the rejection system for one candidate operation. `None` means
    /// the operation can never be a symmetry of any colouring of this family;
    /// an empty row set means it is a symmetry of every colouring.
    fn reject_system(&self, op: &SymmetryOp) -> Option<RejectSystem> {
        let mut gauss = Gauss::new();
        let sign = op.color_sign() < 0;
        for (i, &c) in self.domain.iter().enumerate() {
            let j = self.domain_index(op.apply_cell(c)) as usize;
            let rhs = self.neg[i] ^ self.neg[j] ^ sign;
            let (ci, cj) = (self.class_of[i], self.class_of[j]);
            if ci == cj {
                if rhs {
                    return None;
                }
                continue;
            }
            let mask = (1u64 << ci) | (1u64 << cj);
            if !gauss.insert(mask, rhs) {
                return None;
            }
        }
        Some(RejectSystem { rows: gauss.rows })
    }

    /// All operations that would enlarge the group if they became symmetries:
    /// every (linear, side, shift class) outside the group itself, with the
    /// linear part restricted to those normalizing the lattice. An operation
    /// with a non-normalizing linear part can only be a symmetry of a design
    /// whose translation lattice is strictly finer, and such designs are
    /// already rejected by the pure-translation candidates.
    fn candidate_systems(&self) -> (Vec<RejectSystem>, bool) {
        let lat = &self.spec.lattice;
        let group: Vec<(Linear, Side, (i64, i64))> = group_mod_lattice(&self.spec)
            .iter()
            .map(|g| op_key(g, lat))
            .collect();
        let mut systems = Vec::new();
        let mut forced_extra = false;
        for linear in Linear::ALL {
            if !lat.normalized_by(linear) {
                continue;
            }
            for side in [Side::E, Side::Tau] {
                for shift in &self.domain {
                    let key = (linear, side, (shift.x, shift.y));
                    if key == (Linear::Id, Side::E, (0, 0)) || group.contains(&key) {
                        continue;
                    }
                    let op =
                        SymmetryOp::new(linear, QCoord::new(2 * shift.x, 2 * shift.y), side)
                            .unwrap();
                    if let Some(sys) = self.reject_system(&op) {
                        if sys.rows.is_empty() {
                            // Forced for every colouring: the family cannot
                            // avoid this extra symmetry at all.
                            forced_extra = true;
                        }
                        systems.push(sys);
                    }
                }
            }
        }
        (systems, forced_extra)
    }

    /// Policy transforms (composed with translations) that map this family to
    /// itself, as actions on the free-bit vectors. The identity is omitted.
    fn dedup_transforms(&self, policy: &EquivalencePolicy) -> Vec<BitTransform> {
        let lat = &self.spec.lattice;
        let group_ops = group_mod_lattice(&self.spec);
        let group_keys: Vec<(Linear, Side, (i64, i64))> =
            group_ops.iter().map(|g| op_key(g, lat)).collect();

        let mut out = Vec::new();
        for (linear, comp) in policy.transforms() {
            if !lat.normalized_by(linear) {
                continue;
            }
            for shift in &self.domain {
                if linear == Linear::Id && !comp && (shift.x, shift.y) == (0, 0) {
                    continue; // identity
                }
                let w = SymmetryOp::new(linear, QCoord::new(2 * shift.x, 2 * shift.y), Side::E)
                    .unwrap();
                // W must normalize the group: every conjugated coset stays in
                // the group. The complement part commutes with everything and
                // plays no role here.
                let wi = w.invert();
                let normalizes = group_ops.iter().all(|g| {
                    let conj = w.compose(g).compose(&wi);
                    group_keys.contains(&op_key(&conj, lat))
                });
                if !normalizes {
                    continue;
                }
                // Induced signed permutation of the free bits, built from the
                // preimages of the class representatives.
                let mut src = vec![0u32; self.free];
                let mut flip = vec![false; self.free];
                for k in 0..self.free {
                    let rep = self.domain[self.class_rep[k] as usize];
                    let pre = self.domain_index(wi.apply_cell(rep)) as usize;
                    src[k] = self.class_of[pre];
                    flip[k] = self.neg[pre] ^ comp;
                }
                #[cfg(debug_assertions)]
                for (i, &c) in self.domain.iter().enumerate() {
                    let pre = self.domain_index(wi.apply_cell(c)) as usize;
                    debug_assert_eq!(src[self.class_of[i] as usize], self.class_of[pre]);
                    debug_assert_eq!(
                        flip[self.class_of[i] as usize] ^ self.neg[i],
                        self.neg[pre] ^ comp,
                        "inconsistent dedup transform"
                    );
                }
                out.push(BitTransform::compile(&src, &flip));
            }
        }
        out
    }

    /// Per-box-cell (class, negated) table for building designs.
    fn box_map(&self) -> Vec<(u32, bool)> {
        let n = self.spec.order as i64;
        let mut map = Vec::with_capacity((n * n) as usize);
        for y in 0..n {
            for x in 0..n {
                let i = self.domain_index(Cell::new(x, y)) as usize;
                map.push((self.class_of[i], self.neg[i]));
            }
        }
        map
    }

    fn build_design(&self, bits: u64, box_map: &[(u32, bool)]) -> Design {
        let n = self.spec.order as usize;
        Design::from_fn(n, |x, y| {
            let (cls, neg) = box_map[x as usize + y as usize * n];
            ((bits >> cls) & 1 == 1) != neg
        })
    }
}

/// Small GF(2) eliminator over at most 63 variables.
struct Gauss {
    rows: Vec<(u64, bool)>,
}

impl Gauss {
    fn new() -> Self {
        Gauss { rows: Vec::new() }
    }

    /// Returns false when the inserted row makes the system inconsistent.
    fn insert(&mut self, mut mask: u64, mut rhs: bool) -> bool {
        for &(m, r) in &self.rows {
            if mask & (1 << m.trailing_zeros()) != 0 {
                mask ^= m;
                rhs ^= r;
            }
        }
        if mask == 0 {
            return !rhs;
        }
        self.rows.push((mask, rhs));
        // Rows stay sorted by pivot so the reduction loop above is valid.
        self.rows.sort_by_key(|&(m, _)| m.trailing_zeros());
        true
    }
}

/// Enumerates all designs of the family (prefabrics that fall apart
/// included), deduplicated under the policy, without any per-design analysis.
/// Sorted deterministically.
pub fn enumerate_family_raw(
    spec: &GroupSpec,
    policy: &EquivalencePolicy,
    opts: &EnumOptions,
) -> Result<Vec<Design>, EnumError> {
    let ctx = FamilyContext::new(spec);
    let survivors = scan_colorings(&ctx, policy, opts)?;
    let box_map = ctx.box_map();
    Ok(survivors
        .into_par_iter()
        .map(|bits| ctx.build_design(bits, &box_map))
        .collect())
}

/// The surviving colourings of a family: orbit minima under the dedup group,
/// with every extra-symmetry candidate rejected. Sorted ascending.
fn scan_colorings(
    ctx: &FamilyContext,
    policy: &EquivalencePolicy,
    opts: &EnumOptions,
) -> Result<Vec<u64>, EnumError> {
    if ctx.contradictory {
        return Ok(Vec::new());
    }
    if ctx.free > opts.cap_bits as usize || ctx.free >= 63 {
        return Err(EnumError::CapExceeded {
            free_count: ctx.free,
            cap_bits: opts.cap_bits,
        });
    }
    let (systems, forced_extra) = ctx.candidate_systems();
    if forced_extra {
        return Ok(Vec::new());
    }
    let dedup = ctx.dedup_transforms(policy);

    let total: u64 = 1 << ctx.free;
    let chunk: u64 = 1 << 14;
    let chunks = total.div_ceil(chunk);
    let mut survivors: Vec<u64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|ci| {
            let lo = ci * chunk;
            let hi = (lo + chunk).min(total);
            let mut out = Vec::new();
            'coloring: for x in lo..hi {
                // Keep only orbit minima under the dedup group.
                for t in &dedup {
                    if t.apply(x) < x {
                        continue 'coloring;
                    }
                }
                for sys in &systems {
                    if satisfies(x, sys) {
                        continue 'coloring;
                    }
                }
                out.push(x);
            }
            out
        })
        .collect();
    survivors.sort_unstable();
    Ok(survivors)
}

/// Enumerates all designs of the family, deduplicated under the policy.
///
/// Designs that fall apart are dropped unless `include_falling_apart` is set;
/// either way every returned design has the family's group as its exact
/// symmetry group, hence the family's exact order. The result is sorted
/// deterministically.
pub fn enumerate_family_designs(
    spec: &GroupSpec,
    policy: &EquivalencePolicy,
    include_falling_apart: bool,
    opts: &EnumOptions,
) -> Result<Vec<FamilyDesign>, EnumError> {
    let ctx = FamilyContext::new(spec);
    let survivors = scan_colorings(&ctx, policy, opts)?;
    let box_map = ctx.box_map();
    let designs: Vec<FamilyDesign> = survivors
        .into_par_iter()
        .map(|bits| {
            let design = ctx.build_design(bits, &box_map);
            let hangs = crate::analysis::hangs_together(&design);
            FamilyDesign { design, hangs }
        })
        .filter(|fd| include_falling_apart || fd.hangs)
        .collect();
    Ok(designs)
}

/// Enumerates a family and packages the results as catalog entries with
/// analysis flags and canonical keys.
pub fn enumerate_family(
    spec: &GroupSpec,
    policy: &EquivalencePolicy,
    include_falling_apart: bool,
    opts: &EnumOptions,
) -> Result<Vec<crate::catalog::CatalogEntry>, EnumError> {
    let designs = enumerate_family_designs(spec, policy, include_falling_apart, opts)?;
    let mut entries: Vec<crate::catalog::CatalogEntry> = designs
        .into_par_iter()
        .map(|fd| crate::catalog::CatalogEntry::build(spec, policy, fd))
        .collect();
    entries.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(entries)
}

/// Flat copy of a design with table-based modular indexing, for the hot
/// symmetry-scanning loops. Valid for coordinates within ±8n.
struct FastGrid {
    n: usize,
    cells: Vec<bool>,
    lut: Vec<usize>,
    off: i64,
}

impl FastGrid {
    fn new(d: &Design) -> Self {
        let n = d.size();
        let off = 8 * n as i64;
        let lut: Vec<usize> = (-off..=off)
            .map(|v| v.rem_euclid(n as i64) as usize)
            .collect();
        let mut cells = vec![false; n * n];
        for y in 0..n {
            for x in 0..n {
                cells[x + y * n] = d.color(x as i64, y as i64);
            }
        }
        FastGrid { n, cells, lut, off }
    }

    #[inline]
    fn color(&self, x: i64, y: i64) -> bool {
        let xi = self.lut[(x + self.off) as usize];
        let yi = self.lut[(y + self.off) as usize];
        self.cells[xi + yi * self.n]
    }
}

/// Translation symmetries of a design, as a lattice.
///
/// `hint` must be a lattice of known translation symmetries of the design
/// (the box lattice always qualifies and is the default); the search then
/// only has to look at shifts inside one of its fundamental domains.
pub fn translation_lattice(d: &Design, hint: Option<&Lattice>) -> Lattice {
    let n = d.size() as i64;
    let base = hint.copied().unwrap_or_else(|| Lattice::square(n));
    let domain = base.domain();
    let grid = FastGrid::new(d);
    let dom_color: Vec<bool> = domain.iter().map(|c| grid.color(c.x, c.y)).collect();
    let sym = |t: (i64, i64)| -> bool {
        domain
            .iter()
            .zip(dom_color.iter())
            .all(|(c, &col)| grid.color(c.x + t.0, c.y + t.1) == col)
    };
    #[cfg(debug_assertions)]
    for v in base.basis() {
        debug_assert!(sym(v), "hint lattice is not made of translation symmetries");
    }
    let mut vectors: Vec<(i64, i64)> = base.basis().to_vec();
    for c in &domain {
        if (c.x, c.y) == (0, 0) {
            continue;
        }
        if sym((c.x, c.y)) {
            vectors.push((c.x, c.y));
        }
    }
    lattice_from_vectors(&vectors)
}

/// Smallest lattice containing all the given vectors, which must span the
/// plane.
fn lattice_from_vectors(vs: &[(i64, i64)]) -> Lattice {
    let mut rows: Vec<(i64, i64)> = vs.iter().copied().filter(|&v| v != (0, 0)).collect();
    loop {
        rows.retain(|&r| r != (0, 0));
        rows.sort_by_key(|r| if r.0 == 0 { i64::MAX } else { r.0.abs() });
        let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].0 != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let pivot = rows[nonzero[0]];
        for &i in &nonzero[1..] {
            let q = rows[i].0 / pivot.0;
            rows[i] = (rows[i].0 - q * pivot.0, rows[i].1 - q * pivot.1);
        }
    }
    let px = rows
        .iter()
        .copied()
        .find(|r| r.0 != 0)
        .expect("vectors must span the plane");
    let gy = rows
        .iter()
        .filter(|r| r.0 == 0)
        .fold(0i64, |acc, r| gcd_i(acc, r.1));
    assert!(gy != 0, "vectors must span the plane");
    Lattice::new(px, (0, gy))
}

fn gcd_i(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Crystallographic type of the planar projection of a symmetry group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectedType {
    P1,
    Pg,
    Pm,
    Cm,
    Other,
}

impl std::fmt::Display for ProjectedType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjectedType::P1 => write!(f, "p1"),
            ProjectedType::Pg => write!(f, "pg"),
            ProjectedType::Pm => write!(f, "pm"),
            ProjectedType::Cm => write!(f, "cm"),
            ProjectedType::Other => write!(f, "other"),
        }
    }
}

/// The full symmetry group of a design: its translation lattice and the
/// finitely many coset representatives modulo that lattice, identity
/// included.
#[derive(Clone, Debug)]
pub struct SymmetryGroupInfo {
    pub lattice: Lattice,
    pub coset_reps: Vec<SymmetryOp>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupSummary {
    pub has_rotation: bool,
    pub has_perpendicular_axes: bool,
    pub projected: ProjectedType,
    /// True when no operation carries τ: the side-preserving subgroup is the
    /// whole group.
    pub side_preserving_only: bool,
}

/// Exhaustive scan for every symmetry of the design: rotations about every
/// admissible centre, reflections and glides in all four axis directions with
/// every offset and glide, each with and without τ.
pub fn full_symmetry_group(d: &Design) -> SymmetryGroupInfo {
    full_symmetry_group_with(d, None)
}

/// As [`full_symmetry_group`], seeded with a lattice of known translation
/// symmetries to skip the quadratic translation search.
pub fn full_symmetry_group_with(d: &Design, hint: Option<&Lattice>) -> SymmetryGroupInfo {
    let lattice = translation_lattice(d, hint);
    let domain = lattice.domain();
    let grid = FastGrid::new(d);
    let dom_color: Vec<bool> = domain.iter().map(|c| grid.color(c.x, c.y)).collect();
    let mut reps = Vec::new();
    for linear in Linear::ALL {
        // The translation lattice is exact, so a symmetry's linear part must
        // map it onto itself.
        if !lattice.normalized_by(linear) {
            continue;
        }
        // Image cells of the domain under the linear part, before shifting.
        let base: Vec<(i64, i64)> = domain
            .iter()
            .map(|c| {
                let q = linear.apply(c.center());
                ((q.x - 1) / 2, (q.y - 1) / 2)
            })
            .collect();
        for side in [Side::E, Side::Tau] {
            let flip = linear.swaps_axes() != (side == Side::Tau);
            for shift in &domain {
                let ok = base.iter().zip(dom_color.iter()).all(|(b, &col)| {
                    grid.color(b.0 + shift.x, b.1 + shift.y) == (col != flip)
                });
                if ok {
                    reps.push(
                        SymmetryOp::new(linear, QCoord::new(2 * shift.x, 2 * shift.y), side)
                            .unwrap(),
                    );
                }
            }
        }
    }
    SymmetryGroupInfo {
        lattice,
        coset_reps: reps,
    }
}

/// Does `op` preserve the design, complementing colours when its colour sign
/// is negative? Total over all cells of the period box.
pub fn is_symmetry_of(op: &SymmetryOp, d: &Design) -> bool {
    let n = d.size() as i64;
    for y in 0..n {
        for x in 0..n {
            let c = Cell::new(x, y);
            let i = op.apply_cell(c);
            let expect = d.color(c.x, c.y) != (op.color_sign() < 0);
            if d.color(i.x, i.y) != expect {
                return false;
            }
        }
    }
    true
}

impl SymmetryGroupInfo {
    /// Symmetry ops including the lattice basis translations; enough to
    /// generate the whole group.
    pub fn generators(&self) -> Vec<SymmetryOp> {
        let mut ops = self.coset_reps.clone();
        for v in self.lattice.basis() {
            ops.push(SymmetryOp::translation(v, Side::E));
        }
        ops
    }

    pub fn summary(&self) -> GroupSummary {
        let has_rotation = self.coset_reps.iter().any(|op| op.linear.is_rotation());
        let mut slopes: Vec<AxisSlope> = Vec::new();
        for op in &self.coset_reps {
            if op.linear.is_reflection() {
                let slope = op.classify().axis_slope.unwrap();
                if !slopes.contains(&slope) {
                    slopes.push(slope);
                }
            }
        }
        let has_perpendicular_axes = (slopes.contains(&AxisSlope::Plus)
            && slopes.contains(&AxisSlope::Minus))
            || (slopes.contains(&AxisSlope::Zero) && slopes.contains(&AxisSlope::Infinite));
        let side_preserving_only = self.coset_reps.iter().all(|op| op.side == Side::E);

        let projected = if has_rotation || slopes.len() > 1 {
            ProjectedType::Other
        } else if slopes.is_empty() {
            ProjectedType::P1
        } else {
            match self.axis_line_census(slopes[0]) {
                (true, false) => ProjectedType::Pm,
                (false, true) => ProjectedType::Pg,
                (true, true) => ProjectedType::Cm,
                (false, false) => ProjectedType::P1,
            }
        };
        GroupSummary {
            has_rotation,
            has_perpendicular_axes,
            projected,
            side_preserving_only,
        }
    }

    /// (some line carries a mirror, some line carries only glides) over the
    /// axis lines of the given slope, up to lattice translation.
    fn axis_line_census(&self, slope: AxisSlope) -> (bool, bool) {
        // Offset/glide increments induced by the lattice translations.
        let along: Vec<(i64, i64)> = self
            .lattice
            .basis()
            .iter()
            .map(|&(tx, ty)| match slope {
                AxisSlope::Plus => (ty - tx, tx + ty),
                AxisSlope::Minus => (tx + ty, tx - ty),
                AxisSlope::Zero => (2 * ty, 2 * tx),
                AxisSlope::Infinite => (2 * tx, 2 * ty),
            })
            .collect();
        let m = Lattice::new(along[0], along[1]);
        // Axis lines repeat with offset period q0; on a fixed line the glides
        // repeat with period a.
        let q0 = m.min_period_x();
        let a = m.min_period_y();
        let g = gcd_i(along[0].0, along[1].0);

        // Lines seen, keyed by offset mod q0, with whether a mirror lies on
        // them.
        let mut lines: HashMap<i64, bool> = HashMap::new();
        for op in &self.coset_reps {
            if !op.linear.is_reflection() {
                continue;
            }
            let class = op.classify();
            if class.axis_slope != Some(slope) {
                continue;
            }
            let (c_r, k_r) = match slope {
                AxisSlope::Plus => ((op.shift.y - op.shift.x) / 2, (op.shift.x + op.shift.y) / 2),
                AxisSlope::Minus => ((op.shift.x + op.shift.y) / 2, (op.shift.x - op.shift.y) / 2),
                AxisSlope::Zero => (op.shift.y, op.shift.x),
                AxisSlope::Infinite => (op.shift.x, op.shift.y),
            };
            // Every line this coset reaches, within one offset period.
            let mut j = 0;
            while g * j < q0 {
                let target = g * j;
                if let Some(dk) = solve_increment(&along, target) {
                    let k = k_r + dk;
                    let has_mirror = k.rem_euclid(a) == 0;
                    let entry = lines.entry((c_r + target).rem_euclid(q0)).or_insert(false);
                    *entry |= has_mirror;
                }
                j += 1;
            }
        }
        let mirror_line = lines.values().any(|&m| m);
        let glide_only_line = lines.values().any(|&m| !m);
        (mirror_line, glide_only_line)
    }
}

/// Finds dk with (target, dk) in the span of the increment vectors.
fn solve_increment(along: &[(i64, i64)], target: i64) -> Option<i64> {
    let (a1, k1) = along[0];
    let (a2, k2) = along[1];
    let (g, x, y) = ext_gcd(a1, a2);
    if g == 0 {
        return if target == 0 { Some(0) } else { None };
    }
    if target % g != 0 {
        return None;
    }
    let f = target / g;
    Some(f * (x * k1 + y * k2))
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Lexicographically minimal packed serialization of the design over the
/// policy's transform group and all translations: keys are equal exactly when
/// the designs are equivalent under the policy.
pub fn canonical_key(d: &Design, policy: &EquivalencePolicy) -> Vec<u8> {
    canonical_key_with(d, policy, None)
}

pub fn canonical_key_with(
    d: &Design,
    policy: &EquivalencePolicy,
    lattice_hint: Option<&Lattice>,
) -> Vec<u8> {
    let n = d.size();
    let lattice = translation_lattice(d, lattice_hint);
    let mut best: Option<Vec<u8>> = None;
    for (linear, comp) in policy.transforms() {
        let mut dv = apply_linear(d, linear);
        if comp {
            dv = dv.complement();
        }
        // Translates of the transformed design are distinct only modulo its
        // own translation lattice.
        let lat_t = transform_lattice(&lattice, linear);
        for shift in lat_t.domain() {
            let mut bytes = vec![0u8; (n * n).div_ceil(8)];
            let mut idx = 0;
            for y in (0..n as i64).rev() {
                for x in 0..n as i64 {
                    if dv.color(x + shift.x, y + shift.y) {
                        bytes[idx / 8] |= 1 << (idx % 8);
                    }
                    idx += 1;
                }
            }
            if best.as_ref().is_none_or(|b| bytes < *b) {
                best = Some(bytes);
            }
        }
    }
    best.unwrap()
}

/// The design as transformed by a grid linear about the box.
fn apply_linear(d: &Design, linear: Linear) -> Design {
    let n = d.size() as i64;
    Design::from_fn(d.size(), |x, y| match linear {
        Linear::Id => d.color(x, y),
        Linear::Rot90 => d.color(y, n - 1 - x),
        Linear::Rot180 => d.color(n - 1 - x, n - 1 - y),
        Linear::Rot270 => d.color(n - 1 - y, x),
        Linear::MirH => d.color(x, n - 1 - y),
        Linear::MirV => d.color(n - 1 - x, y),
        Linear::MirDiag => d.color(y, x),
        Linear::MirAnti => d.color(n - 1 - y, n - 1 - x),
    })
}

fn transform_lattice(l: &Lattice, linear: Linear) -> Lattice {
    let im = |v: (i64, i64)| {
        let q = linear.apply(QCoord::new(v.0, v.1));
        (q.x, q.y)
    };
    Lattice::new(im(l.basis()[0]), im(l.basis()[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::{group_for, validate_params, SpeciesParams, SpeciesTag};

    fn spec(tag: SpeciesTag, ell: u32, w: u32) -> GroupSpec {
        group_for(SpeciesParams::new(tag, ell, w)).unwrap()
    }

    #[test]
    fn orbit_count_for_displaced_pg_family() {
        // Species 1_e with (3, 4): twelve orbits cover the plane.
        let s = spec(SpeciesTag::S1e, 3, 4);
        let sys = orbits(&s);
        assert!(!sys.contradictory);
        assert_eq!(sys.free_count, 12);
    }

    #[test]
    fn orbit_sizes_sum_to_domain() {
        for tag in SpeciesTag::ALL {
            for ell in 1..=6 {
                for w in 1..=6 {
                    if validate_params(tag, ell, w).is_ok() {
                        let s = spec(tag, ell, w);
                        let sys = orbits(&s);
                        assert_eq!(sys.domain.len(), s.period_area as usize);
                        assert_eq!(sys.class_of.len(), sys.domain.len());
                        let max = *sys.class_of.iter().max().unwrap() as usize;
                        assert_eq!(max + 1, sys.free_count);
                        assert!(!sys.contradictory, "{tag}({ell},{w})");
                    }
                }
            }
        }
    }

    #[test]
    fn group_mod_lattice_sizes() {
        assert_eq!(group_mod_lattice(&spec(SpeciesTag::S1m, 2, 3)).len(), 2);
        assert_eq!(group_mod_lattice(&spec(SpeciesTag::S3, 2, 3)).len(), 4);
        assert_eq!(group_mod_lattice(&spec(SpeciesTag::S5e, 2, 3)).len(), 2);
        assert_eq!(group_mod_lattice(&spec(SpeciesTag::S6, 1, 4)).len(), 4);
        assert_eq!(group_mod_lattice(&spec(SpeciesTag::S8o, 7, 1)).len(), 2);
        assert_eq!(group_mod_lattice(&spec(SpeciesTag::S9, 2, 4)).len(), 4);
        assert_eq!(group_mod_lattice(&spec(SpeciesTag::S10, 3, 5)).len(), 4);
    }

    #[test]
    fn plain_weave_group_has_quarter_turns_with_tau() {
        let info = full_symmetry_group(&Design::plain_weave());
        assert!(info
            .coset_reps
            .iter()
            .any(|op| op.linear == Linear::Rot90 && op.side == Side::Tau));
        let summary = info.summary();
        assert!(summary.has_rotation);
        assert_eq!(summary.projected, ProjectedType::Other);
    }

    #[test]
    fn translation_lattice_of_plain_weave() {
        let lat = translation_lattice(&Design::plain_weave(), None);
        assert_eq!(lat.det(), 2);
        assert!(lat.contains((1, 1)));
        assert!(!lat.contains((1, 0)));
    }

    #[test]
    fn diagonal_mirror_symmetry_of_plain_weave() {
        let d = Design::plain_weave();
        let with_tau = SymmetryOp::diagonal_mirror(0, Side::Tau).unwrap();
        let without = SymmetryOp::diagonal_mirror(0, Side::E).unwrap();
        assert!(is_symmetry_of(&with_tau, &d));
        assert!(!is_symmetry_of(&without, &d));
        let box_translation = SymmetryOp::translation((2, 0), Side::E);
        assert!(is_symmetry_of(&box_translation, &d));
    }

    #[test]
    fn canonical_key_invariance() {
        let d = Design::from_rows(&["1100", "0110", "0011", "1001"]);
        let policy = EquivalencePolicy::default();
        let k = canonical_key(&d, &policy);
        let shifted = Design::from_fn(4, |x, y| d.color(x + 1, y + 2));
        assert_eq!(canonical_key(&shifted, &policy), k);
        let full = EquivalencePolicy {
            use_views: true,
            use_complement: true,
        };
        for v in crate::design::ViewId::ALL {
            assert_eq!(canonical_key(&d.view(v), &full), canonical_key(&d, &full));
        }
    }
}
