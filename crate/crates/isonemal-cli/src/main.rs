//! Command-line interface: species rules, family enumeration, design
//! analysis, strand transforms, order catalogs, and SVG rendering.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use isonemal::render::{Overlays, Palette, RenderSpec};
use isonemal::species::TwillError;
use isonemal::*;

/// Exit code for domain errors in the arguments (bad species, bad order...).
const EXIT_USAGE: u8 = 2;
/// Exit code when an enumeration exceeded its colouring cap.
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "isonemal",
    about = "Two-layer weaving designs: symmetry species, enumeration, analysis",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolicyArg {
    /// Identify translates only.
    Plain,
    /// Identify translates and the eight views (rotations and turn-overs).
    Views,
    /// Identify translates and the colour complement.
    Complement,
    /// Identify views and the colour complement.
    ViewsComplement,
}

impl PolicyArg {
    fn to_policy(self) -> EquivalencePolicy {
        match self {
            PolicyArg::Plain => EquivalencePolicy {
                use_views: false,
                use_complement: false,
            },
            PolicyArg::Views => EquivalencePolicy {
                use_views: true,
                use_complement: false,
            },
            PolicyArg::Complement => EquivalencePolicy {
                use_views: false,
                use_complement: true,
            },
            PolicyArg::ViewsComplement => EquivalencePolicy {
                use_views: true,
                use_complement: true,
            },
        }
    }
}

#[derive(Args)]
struct EnumFlags {
    /// Equivalence used to deduplicate designs.
    #[arg(long, value_enum, default_value = "views")]
    policy: PolicyArg,
    /// Cap on the colouring space: families larger than 2^CAP are refused.
    #[arg(long, default_value_t = 24)]
    cap: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Species parameter rules and order-driven candidate search.
    Species {
        #[command(subcommand)]
        command: SpeciesCommand,
    },
    /// Enumerate one family exhaustively.
    Family {
        #[command(subcommand)]
        command: FamilyCommand,
    },
    /// Analyze a design file: order, genus, isonemality, coherence, group type.
    Analyze { file: PathBuf },
    /// Strand doubling and quadrant halving.
    Transform {
        #[command(subcommand)]
        command: TransformCommand,
    },
    /// All designs of a given order, grouped by species.
    Catalog {
        /// The order (strand period) to catalog.
        n: u32,
        /// Keep only the prefabrics that fall apart.
        #[arg(long)]
        falls_apart_only: bool,
        /// Output directory for design files and summary.tsv.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Orders above this bound are refused.
        #[arg(long, default_value_t = 32)]
        max_order: u32,
        #[command(flatten)]
        flags: EnumFlags,
    },
    /// Render a design file as SVG.
    Render {
        file: PathBuf,
        /// Species group for axis and unit overlays, as tag,ell,w.
        #[arg(long)]
        group: Option<String>,
        /// Comma-separated overlays: mirrors, glides, g1, h1, all.
        #[arg(long)]
        overlays: Option<String>,
        /// Cell size in pixels.
        #[arg(long, default_value_t = 20)]
        cell_px: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum SpeciesCommand {
    /// Check parameters against every rule of the species.
    Check { tag: String, ell: u32, w: u32 },
    /// List the species parameters that can produce a given order.
    ListOrder { n: u32 },
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Enumerate all designs of a family.
    Enum {
        tag: String,
        ell: u32,
        w: u32,
        /// Include prefabrics that fall apart.
        #[arg(long)]
        falls_apart: bool,
        /// Output directory for design files.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        flags: EnumFlags,
    },
}

#[derive(Subcommand)]
enum TransformCommand {
    /// Replace every strand by a pair of strands.
    Double { file: PathBuf },
    /// Keep one quadrant class of every 2x2 block.
    Halve {
        file: PathBuf,
        /// Quadrant to keep (1-4); all four factors without it.
        #[arg(long)]
        factor: Option<u8>,
        /// Block anchor parities, e.g. 0,0.
        #[arg(long, default_value = "0,0")]
        anchor: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn parse_tag(s: &str) -> Result<SpeciesTag> {
    s.parse::<SpeciesTag>().map_err(|e| {
        anyhow::anyhow!(
            "{e}; valid tags: 1_m 1_e 1_o 2_m 2_e 2_o 3 4_e 4_o 5_e 5_o 6 7_e 7_o 8_e 8_o 9 10"
        )
    })
}

fn load_design(path: &Path) -> Result<Design> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Design::parse(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Species { command } => match command {
            SpeciesCommand::Check { tag, ell, w } => {
                let tag = parse_tag(&tag)?;
                let verdict = validate_params(tag, ell, w);
                if verdict.is_ok() {
                    let spec = group_for(verdict.params).unwrap();
                    println!(
                        "ok: {} order={} period={} genus={}",
                        verdict.params, spec.order, spec.period_area, spec.genus_expected
                    );
                } else {
                    println!("reject: {}", verdict.params);
                    for v in &verdict.violations {
                        println!("  {}: {}", v.rule, v.message);
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            SpeciesCommand::ListOrder { n } => {
                let candidates = candidates_for_order(n)?;
                for p in candidates {
                    let spec = group_for(p).unwrap();
                    println!("{p} period={}", spec.period_area);
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Family { command } => match command {
            FamilyCommand::Enum {
                tag,
                ell,
                w,
                falls_apart,
                out,
                flags,
            } => {
                let tag = parse_tag(&tag)?;
                let params = SpeciesParams::new(tag, ell, w);
                let spec = group_for(params)?;
                let policy = flags.policy.to_policy();
                let opts = EnumOptions {
                    cap_bits: flags.cap,
                };
                let entries = match enumerate_family(&spec, &policy, falls_apart, &opts) {
                    Ok(entries) => entries,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return Ok(ExitCode::from(EXIT_CAP));
                    }
                };
                print_summary_header(&policy);
                let ids = write_entries(&entries, spec.order, out.as_deref())?;
                for (id, e) in ids.iter().zip(entries.iter()) {
                    println!("{}", summary_line(id, e));
                }
                eprintln!("{} designs", entries.len());
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Analyze { file } => {
            let d = load_design(&file)?;
            let genus = d.genus();
            let info = full_symmetry_group(&d);
            let summary = info.summary();
            println!("order: {}", d.order());
            println!(
                "genus: {} (shift offsets {:?}, complementing offsets {:?})",
                genus.flag, genus.genus1_offsets, genus.genus2_offsets
            );
            println!("isonemal: {}", is_isonemal(&d));
            println!("hangs-together: {}", hangs_together(&d));
            println!("projected-group: {}", summary.projected);
            println!("rotations: {}", summary.has_rotation);
            println!("perpendicular-axes: {}", summary.has_perpendicular_axes);
            match twill_name(&d) {
                Ok(name) => println!("twill: {name}"),
                Err(TwillError::Constant) => println!("twill: trivial prefabric"),
                Err(TwillError::NotATwill) => {}
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Transform { command } => match command {
            TransformCommand::Double { file } => {
                let d = load_design(&file)?;
                print!("{}", double(&d).serialize());
                Ok(ExitCode::SUCCESS)
            }
            TransformCommand::Halve {
                file,
                factor,
                anchor,
            } => {
                let d = load_design(&file)?;
                let (ax, ay) = anchor
                    .split_once(',')
                    .and_then(|(a, b)| Some((a.parse::<u8>().ok()?, b.parse::<u8>().ok()?)))
                    .context("anchor must be two parities like 0,1")?;
                if ax > 1 || ay > 1 {
                    bail!("anchor parities must be 0 or 1");
                }
                let numbering = QuadrantNumbering { anchor: (ax, ay) };
                let quadrants: Vec<Quadrant> = match factor {
                    Some(k) => vec![*Quadrant::ALL
                        .iter()
                        .find(|q| q.index() == k)
                        .context("factor must be 1, 2, 3 or 4")?],
                    None => Quadrant::ALL.to_vec(),
                };
                for q in quadrants {
                    println!("# factor {}", q.index());
                    print!("{}", halve(&d, &numbering, q).serialize());
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Catalog {
            n,
            falls_apart_only,
            out,
            max_order,
            flags,
        } => {
            if n > max_order {
                bail!("order {n} is above the bound {max_order}; raise --max-order to proceed");
            }
            let policy = flags.policy.to_policy();
            let opts = EnumOptions {
                cap_bits: flags.cap,
            };
            let result = catalog(n, &policy, falls_apart_only, &opts)?;
            let mut lines: Vec<String> = Vec::new();
            let mut files: Vec<(String, String)> = Vec::new();
            for fam in &result.families {
                let mut seq = 0;
                for e in &fam.entries {
                    if falls_apart_only && e.hangs {
                        continue;
                    }
                    seq += 1;
                    let id = format!("{n}-{}-{seq}", e.key_hash());
                    lines.push(summary_line(&id, e));
                    files.push((id, e.design.serialize()));
                }
            }
            print_summary_header(&policy);
            for l in &lines {
                println!("{l}");
            }
            if let Some(dir) = out {
                fs::create_dir_all(&dir)?;
                for (id, text) in &files {
                    fs::write(dir.join(format!("{id}.design")), text)?;
                }
                let mut tsv =
                    String::from("id\tspecies\tell\tw\torder\tgenus\tisonemal\thangs\ttwill\n");
                for l in &lines {
                    tsv.push_str(l);
                    tsv.push('\n');
                }
                fs::write(dir.join("summary.tsv"), tsv)?;
            }
            for c in &result.collisions {
                eprintln!("collision: {c}");
            }
            if !result.cap_exceeded.is_empty() {
                for (p, e) in &result.cap_exceeded {
                    eprintln!("cap exceeded: {p}: {e}");
                }
                return Ok(ExitCode::from(EXIT_CAP));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Render {
            file,
            group,
            overlays,
            cell_px,
            output,
        } => {
            let d = load_design(&file)?;
            let spec_group = match group {
                Some(g) => {
                    let parts: Vec<&str> = g.split(',').collect();
                    if parts.len() != 3 {
                        bail!("--group takes tag,ell,w");
                    }
                    let tag = parse_tag(parts[0])?;
                    let ell: u32 = parts[1].parse().context("bad ell")?;
                    let w: u32 = parts[2].parse().context("bad w")?;
                    Some(group_for(SpeciesParams::new(tag, ell, w))?)
                }
                None => None,
            };
            let mut ov = Overlays::default();
            if let Some(list) = overlays {
                for item in list.split(',') {
                    match item {
                        "mirrors" => ov.mirrors = true,
                        "glides" => ov.glide_axes = true,
                        "g1" => ov.g1_unit = true,
                        "h1" => ov.h1_unit = true,
                        "all" => ov = Overlays::all(),
                        other => bail!("unknown overlay {other:?}"),
                    }
                }
            }
            let spec = RenderSpec {
                cell_px,
                overlays: ov,
                palette: Palette::default(),
            };
            let svg = render::render_svg(&d, spec_group.as_ref(), &spec);
            fs::write(&output, svg).with_context(|| format!("cannot write {}", output.display()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_summary_header(policy: &EquivalencePolicy) {
    println!("# policy: {}", policy.label());
    println!("id\tspecies\tell\tw\torder\tgenus\tisonemal\thangs\ttwill");
}

fn summary_line(id: &str, e: &CatalogEntry) -> String {
    format!(
        "{id}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        e.species.tag,
        e.species.ell,
        e.species.w,
        e.order,
        e.genus,
        e.isonemal,
        e.hangs,
        e.twill.as_deref().unwrap_or("-")
    )
}

fn write_entries(entries: &[CatalogEntry], order: u32, out: Option<&Path>) -> Result<Vec<String>> {
    let mut ids = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let id = format!("{order}-{}-{}", e.key_hash(), i + 1);
        if let Some(dir) = out {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(format!("{id}.design")), e.design.serialize())?;
        }
        ids.push(id);
    }
    Ok(ids)
}
