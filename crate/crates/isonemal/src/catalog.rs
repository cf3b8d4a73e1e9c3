//! Order-driven catalog pipeline.
//!
//! Finding every prefabric of a given order needs no trial and error: the
//! per-species order formulas name the families that can reach the order,
//! each family is enumerated exhaustively, and the enumeration itself already
//! rejects designs of smaller order (they would have extra translations) and
//! designs with enlarged symmetry groups.

use rayon::prelude::*;

use crate::design::{Design, GenusFlag};
use crate::enumeration::{
    canonical_key_with, enumerate_family, EnumError, EnumOptions, EquivalencePolicy, FamilyDesign,
};
use crate::species::{candidates_for_order, group_for, twill_name, GroupSpec, SpeciesError,
    SpeciesParams, SpeciesTag};

/// One catalogued design with its analysis flags.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub design: Design,
    pub species: SpeciesParams,
    pub order: u32,
    pub genus: GenusFlag,
    pub isonemal: bool,
    pub hangs: bool,
    pub twill: Option<String>,
    pub key: Vec<u8>,
}

impl CatalogEntry {
    pub(crate) fn build(
        spec: &GroupSpec,
        policy: &EquivalencePolicy,
        fd: FamilyDesign,
    ) -> CatalogEntry {
        let design = fd.design;
        let genus = design.genus().flag;
        let isonemal = crate::analysis::is_isonemal_with(&design, Some(&spec.lattice));
        let twill = twill_name(&design).ok();
        let key = canonical_key_with(&design, policy, Some(&spec.lattice));
        debug_assert_eq!(design.order() as u32, spec.order);
        CatalogEntry {
            design,
            species: spec.params,
            order: spec.order,
            genus,
            isonemal,
            hangs: fd.hangs,
            twill,
            key,
        }
    }

    /// Short stable hash of the canonical key, used in entry labels.
    pub fn key_hash(&self) -> String {
        // FNV-1a, truncated; only has to be deterministic and well spread.
        let mut h: u64 = 0xcbf29ce484222325;
        for &b in &self.key {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{:08x}", h as u32)
    }
}

/// Entries of a single family within a catalog.
#[derive(Clone, Debug)]
pub struct FamilyCatalog {
    pub params: SpeciesParams,
    pub entries: Vec<CatalogEntry>,
}

/// Result of a catalog run.
#[derive(Clone, Debug)]
pub struct CatalogOutput {
    pub order: u32,
    pub policy: EquivalencePolicy,
    pub families: Vec<FamilyCatalog>,
    /// Families refused because their colouring space exceeded the cap.
    pub cap_exceeded: Vec<(SpeciesParams, EnumError)>,
    /// Same canonical key reached from two species: species are meant to
    /// partition prefabrics by exact group, so collisions are reported as
    /// diagnostics.
    pub collisions: Vec<String>,
}

impl CatalogOutput {
    pub fn total_entries(&self) -> usize {
        self.families.iter().map(|f| f.entries.len()).sum()
    }
}

/// Enumerates every design of order `n`, grouped by species.
pub fn catalog(
    n: u32,
    policy: &EquivalencePolicy,
    include_falling_apart: bool,
    opts: &EnumOptions,
) -> Result<CatalogOutput, SpeciesError> {
    let params = candidates_for_order(n)?;
    let results: Vec<(SpeciesParams, Result<Vec<CatalogEntry>, EnumError>)> = params
        .into_par_iter()
        .map(|p| {
            let spec = group_for(p).expect("candidates are valid");
            (p, enumerate_family(&spec, policy, include_falling_apart, opts))
        })
        .collect();

    let mut families = Vec::new();
    let mut cap_exceeded = Vec::new();
    for (p, r) in results {
        match r {
            Ok(entries) => families.push(FamilyCatalog { params: p, entries }),
            Err(e) => cap_exceeded.push((p, e)),
        }
    }
    families.sort_by_key(|f| f.params);

    let mut collisions = Vec::new();
    let mut seen: std::collections::HashMap<&[u8], SpeciesParams> =
        std::collections::HashMap::new();
    for f in &families {
        for e in &f.entries {
            if let Some(prev) = seen.get(e.key.as_slice()) {
                if prev.tag != f.params.tag || (prev.ell, prev.w) != (f.params.ell, f.params.w) {
                    collisions.push(format!(
                        "design {} reached from both {prev} and {}",
                        e.key_hash(),
                        f.params
                    ));
                }
            } else {
                seen.insert(e.key.as_slice(), f.params);
            }
        }
    }

    Ok(CatalogOutput {
        order: n,
        policy: *policy,
        families,
        cap_exceeded,
        collisions,
    })
}

/// Prefabrics of order `n` that fall apart: species 3, 6 and 9 are the only
/// parallel-axis species that produce them, always at orders divisible by 4.
pub fn falls_apart_list(
    n: u32,
    policy: &EquivalencePolicy,
    opts: &EnumOptions,
) -> Result<Vec<FamilyCatalog>, SpeciesError> {
    let params = candidates_for_order(n)?;
    let mut out = Vec::new();
    for p in params {
        if !matches!(p.tag, SpeciesTag::S3 | SpeciesTag::S6 | SpeciesTag::S9) {
            continue;
        }
        let spec = group_for(p).expect("candidates are valid");
        let entries = match enumerate_family(&spec, policy, true, opts) {
            Ok(entries) => entries,
            Err(_) => continue,
        };
        let falling: Vec<CatalogEntry> = entries.into_iter().filter(|e| !e.hangs).collect();
        if !falling.is_empty() {
            out.push(FamilyCatalog {
                params: p,
                entries: falling,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_rejects_small_orders() {
        let policy = EquivalencePolicy::default();
        assert!(catalog(4, &policy, false, &EnumOptions::default()).is_err());
    }

    #[test]
    fn order_five_catalog_is_empty() {
        let policy = EquivalencePolicy::default();
        let out = catalog(5, &policy, false, &EnumOptions::default()).unwrap();
        assert_eq!(out.total_entries(), 0);
    }

    #[test]
    fn falls_apart_list_empty_off_multiples_of_four() {
        let policy = EquivalencePolicy::default();
        let out = falls_apart_list(7, &policy, &EnumOptions::default()).unwrap();
        assert!(out.is_empty());
    }
}
