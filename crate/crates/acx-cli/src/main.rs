//! `acx`: exact decision engine for almost complex structures on connected
//! sums and products of rational homology spheres.

use acx_cli::{descriptor, report};
use acx_core::charclass::spinc_dirac_index;
use acx_core::decision::{
    classify_connected_sum, classify_product_rhs, classify_sphere_product_dims,
    guaranteed_connected_sum, RhsFactor, TriState,
};
use acx_core::genus::{genus_polynomials, GenusId};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use descriptor::load_descriptor;
use report::{GenusRow, OutputReport, Query, QueryResult};
use std::path::PathBuf;
use std::process::ExitCode;

/// Largest cohomological degree the genus table command will expand.
const GENUS_DEGREE_CAP: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "acx",
    version,
    about = "Exact characteristic-class arithmetic and cited verdicts on almost complex structures"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// For which summand counts is a connected sum guaranteed almost complex?
    Guarantee {
        /// Real dimension (even, at least 2).
        #[arg(long)]
        dim: u32,
        /// Number of summands.
        #[arg(long)]
        l: u64,
    },
    /// Classify a named connected sum from a descriptor file.
    Classify {
        /// Descriptor file (searched in $ACX_FIXTURE_DIR as a fallback).
        #[arg(long)]
        file: PathBuf,
        /// Name of a summand list in the file.
        #[arg(long)]
        list: String,
    },
    /// Classify a product of two rational homology spheres (or spheres).
    Product {
        /// Half-dimension of the first factor.
        #[arg(long)]
        p: u32,
        /// Half-dimension of the second factor.
        #[arg(long)]
        q: u32,
        /// Whether the second factor is spin^c (only matters when its
        /// dimension is 6).
        #[arg(long)]
        spin_c: Option<bool>,
        /// Treat the factors as genuine even spheres S^{2p} x S^{2q}.
        #[arg(long, conflicts_with = "odd_spheres")]
        spheres: bool,
        /// Treat p, q as odd sphere dimensions: the product S^p x S^q.
        #[arg(long)]
        odd_spheres: bool,
    },
    /// Exact twisted spin^c Dirac index of a manifold with Chern data.
    Index {
        #[arg(long)]
        file: PathBuf,
        /// Name of a manifold in the file.
        #[arg(long)]
        manifold: String,
    },
    /// Print the multiplicative-sequence polynomials of a genus.
    #[command(group(ArgGroup::new("which").required(true).args(["ahat", "l"])))]
    Genus {
        /// The A-hat genus, (x/2)/sinh(x/2).
        #[arg(long)]
        ahat: bool,
        /// The L genus, x/tanh(x).
        #[arg(long)]
        l: bool,
        /// Expand polynomials up to this cohomological degree.
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => println!("{}", report.render_json()),
            }
            ExitCode::from(report.exit_code())
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command) -> Result<OutputReport, String> {
    match command {
        Command::Guarantee { dim, l } => {
            let verdict = guaranteed_connected_sum(*dim, *l).map_err(|e| e.to_string())?;
            Ok(OutputReport::new(
                Query::Guarantee { dim: *dim, l: *l },
                QueryResult::Verdict { verdict },
            ))
        }
        Command::Classify { file, list } => {
            let descriptor = load_descriptor(file).map_err(|e| e.to_string())?;
            let summands = descriptor.summand_list(list).map_err(|e| e.to_string())?;
            let query = Query::Classify {
                file: file.display().to_string(),
                list: list.clone(),
                dim: summands.dim(),
                summands: summands.len(),
            };
            let verdict = classify_connected_sum(&summands).map_err(|e| e.to_string())?;
            Ok(OutputReport::new(query, QueryResult::Verdict { verdict }))
        }
        Command::Product {
            p,
            q,
            spin_c,
            spheres,
            odd_spheres,
        } => {
            let (mode, verdict) = if *odd_spheres {
                (
                    "odd_spheres",
                    classify_sphere_product_dims(*p, *q).map_err(|e| e.to_string())?,
                )
            } else if *spheres {
                (
                    "spheres",
                    classify_sphere_product_dims(p.saturating_mul(2), q.saturating_mul(2))
                        .map_err(|e| e.to_string())?,
                )
            } else {
                let m = RhsFactor::new(*p, TriState::Unknown);
                let n = RhsFactor::new(*q, TriState::from(*spin_c));
                (
                    "rhs",
                    classify_product_rhs(m, n).map_err(|e| e.to_string())?,
                )
            };
            Ok(OutputReport::new(
                Query::Product {
                    p: *p,
                    q: *q,
                    mode: mode.to_owned(),
                    spin_c: *spin_c,
                },
                QueryResult::Verdict { verdict },
            ))
        }
        Command::Index { file, manifold } => {
            let descriptor = load_descriptor(file).map_err(|e| e.to_string())?;
            let m = descriptor.manifold(manifold).map_err(|e| e.to_string())?;
            let chern = m.tangent_chern.as_ref().ok_or_else(|| {
                descriptor::DescriptorError::MissingChernData {
                    name: manifold.clone(),
                }
                .to_string()
            })?;
            let value = spinc_dirac_index(chern, &chern.pontryagin());
            let integral = value.is_integer();
            Ok(OutputReport::new(
                Query::Index {
                    file: file.display().to_string(),
                    manifold: manifold.clone(),
                },
                QueryResult::Index { value, integral },
            ))
        }
        Command::Genus {
            ahat,
            l,
            max_degree,
        } => {
            let _ = l;
            if *max_degree > GENUS_DEGREE_CAP {
                return Err(format!(
                    "max-degree {max_degree} exceeds the cap {GENUS_DEGREE_CAP}"
                ));
            }
            let genus = if *ahat { GenusId::AHat } else { GenusId::L };
            let rows = genus_polynomials(genus, max_degree / 4)
                .iter()
                .map(|k| GenusRow {
                    i: k.weight(),
                    degree: 4 * k.weight(),
                    polynomial: k.to_string(),
                })
                .collect();
            Ok(OutputReport::new(
                Query::Genus {
                    genus: genus.to_string(),
                    max_degree: *max_degree,
                },
                QueryResult::GenusTable { rows },
            ))
        }
    }
}
