//! Command-line front end: reproducible enumeration, covering analysis, the
//! dihedral tower, Accola checks, Prym numerics, and the claim ledger.
//!
//! Exit codes: 0 success, 1 ledger mismatch, 2 usage error, 3 resource guard.

mod ledger;

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use permcover::covers::{
    discriminant_rep, galois_closure, is_cyclic_triple_cover, is_galois, monodromy_group,
    CoveringRep,
};
use permcover::error::Error as CoreError;
use permcover::genera::{
    accola_residual, accola_solve_part_genus, accola_solve_quotient_genus,
    canonical_tower_report, distinct_tuples_up_to_conjugacy, find_tower_monodromy,
    genus_from_monodromy, ramification_profile, tower_dot, RamificationProfile, TowerTuple,
};
use permcover::homenum::{
    classes_up_to_conjugacy, enumerate_homs, is_surjective, transposition_histogram,
};
use permcover::permgroup::FiniteGroup;
use permcover::prym::{classify_ppp, is_principal_multiple, prym_dimension, prym_map_fiber, prym_type, PrincipalVerdict};

#[derive(Parser)]
#[command(
    name = "permcover",
    version,
    about = "Coverings of curves via permutation monodromy: counts, genera, towers, Prym data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count genus-g surface-group homomorphisms into a group
    Count {
        #[arg(long)]
        genus: usize,
        /// Group spec: a family letter S, A, D or Z followed by a size, e.g. S3 or D6
        #[arg(long)]
        group: String,
    },
    /// Analyze a covering given as JSON monodromy data
    Analyze {
        /// Input file; standard input when omitted
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// The dihedral tower of quotient curves over the line
    Tower {
        /// List every valid branch tuple with its census
        #[arg(long, conflicts_with = "dot")]
        all_tuples: bool,
        /// With --all-tuples: collapse to one tuple per conjugation orbit
        #[arg(long, requires = "all_tuples")]
        distinct: bool,
        /// Emit the tower diagram as Graphviz DOT
        #[arg(long)]
        dot: bool,
    },
    /// Check (or solve) Accola's partition identity
    Accola {
        /// Genus of the curve the group acts on
        #[arg(long)]
        genus: usize,
        /// Order of the partitioned group
        #[arg(long)]
        group_order: usize,
        /// Genus of the quotient by the whole group
        #[arg(long)]
        quotient_genus: Option<usize>,
        /// A part as order:genus; repeat once per part
        #[arg(long = "part", value_name = "N:G")]
        parts: Vec<String>,
        /// Solve for the genus of the part at this index (its stated genus is ignored)
        #[arg(long, conflicts_with = "solve_quotient")]
        solve_part: Option<usize>,
        /// Solve for the quotient genus of the whole group
        #[arg(long)]
        solve_quotient: bool,
    },
    /// Dimension and induced polarization type of the Prym variety
    PrymType {
        #[arg(long)]
        base_genus: usize,
        /// Number of simple (order-2) ramification points
        #[arg(long, default_value_t = 0)]
        simple: usize,
        /// Number of total (order-3) ramification points
        #[arg(long, default_value_t = 0)]
        total: usize,
    },
    /// The ten 3+3 splittings of six Weierstrass labels
    PrymFiber {
        /// Comma-separated labels (default w1,...,w6)
        #[arg(long)]
        labels: Option<String>,
    },
    /// Classify when the Prym variety is principally polarized
    Classify {
        #[arg(long)]
        base_genus: usize,
        #[arg(long, default_value_t = 0)]
        simple: usize,
        #[arg(long, default_value_t = 0)]
        total: usize,
    },
    /// Check every tracked constant; nonzero exit on any mismatch
    Ledger {
        /// Keep only entries whose claim contains this string
        #[arg(long)]
        only: Option<String>,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Guard(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::EnumerationTooLarge { .. }
            | CoreError::GroupTooLarge { .. }
            | CoreError::LatticeTooLarge { .. } => Failure::Guard(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

fn emit<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Count { genus, group } => cmd_count(genus, &group),
        Command::Analyze { input } => cmd_analyze(input),
        Command::Tower {
            all_tuples,
            distinct,
            dot,
        } => cmd_tower(all_tuples, distinct, dot),
        Command::Accola {
            genus,
            group_order,
            quotient_genus,
            parts,
            solve_part,
            solve_quotient,
        } => cmd_accola(
            genus,
            group_order,
            quotient_genus,
            &parts,
            solve_part,
            solve_quotient,
        ),
        Command::PrymType {
            base_genus,
            simple,
            total,
        } => cmd_prym_type(base_genus, simple, total),
        Command::PrymFiber { labels } => cmd_prym_fiber(labels.as_deref()),
        Command::Classify {
            base_genus,
            simple,
            total,
        } => cmd_classify(base_genus, simple, total),
        Command::Ledger { only, json } => cmd_ledger(only.as_deref(), json),
    }
}

fn parse_group(spec: &str) -> Result<FiniteGroup, Failure> {
    let mut chars = spec.chars();
    let family = chars
        .next()
        .ok_or_else(|| Failure::Usage("empty group spec".into()))?;
    let n: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Failure::Usage(format!("cannot parse group spec '{spec}'")))?;
    let group = match family {
        'S' => FiniteGroup::symmetric(n),
        'A' => FiniteGroup::alternating(n),
        'D' => FiniteGroup::dihedral(n),
        'Z' => FiniteGroup::cyclic(n),
        _ => {
            return Err(Failure::Usage(format!(
                "unknown group family '{family}'; use S<d>, A<d>, D<n> or Z<n>"
            )))
        }
    };
    group.map_err(Failure::from)
}

#[derive(Serialize)]
struct CountReport {
    group: String,
    genus: usize,
    total: usize,
    surjective: usize,
    classes: usize,
    histogram_by_transpositions: Option<BTreeMap<usize, usize>>,
}

fn cmd_count(genus: usize, group_spec: &str) -> Result<u8, Failure> {
    let group = parse_group(group_spec)?;
    let homs = enumerate_homs(&group, genus).map_err(Failure::from)?;
    let surjective: Vec<_> = homs
        .iter()
        .filter(|h| is_surjective(&group, h))
        .cloned()
        .collect();
    let classes = classes_up_to_conjugacy(&group, &surjective);
    let histogram = if group.has_permutation_realization() {
        Some(transposition_histogram(&group, &surjective).map_err(Failure::from)?)
    } else {
        None
    };
    emit(&CountReport {
        group: group_spec.to_string(),
        genus,
        total: homs.len(),
        surjective: surjective.len(),
        classes: classes.len(),
        histogram_by_transpositions: histogram,
    });
    Ok(0)
}

#[derive(Serialize)]
struct RamificationReport {
    simple: usize,
    total: usize,
}

#[derive(Serialize)]
struct DiscriminantReport {
    connected: bool,
    genus: Option<usize>,
}

#[derive(Serialize)]
struct ClosureReport {
    degree: usize,
    genus: usize,
}

#[derive(Serialize)]
struct AnalyzeReport {
    degree: usize,
    genus: usize,
    transitive: bool,
    orbit_count: usize,
    monodromy_order: usize,
    monodromy_group: FiniteGroup,
    is_galois: Option<bool>,
    is_cyclic_triple_cover: Option<bool>,
    ramification: Option<RamificationReport>,
    total_space_genus: Option<usize>,
    discriminant: DiscriminantReport,
    closure: Option<ClosureReport>,
}

fn cmd_analyze(input: Option<PathBuf>) -> Result<u8, Failure> {
    let text = match input {
        Some(path) => fs::read_to_string(&path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
        None => io::read_to_string(io::stdin())
            .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?,
    };
    let rep: CoveringRep = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("invalid covering data: {e}")))?;

    let transitive = rep.is_transitive();
    let image = monodromy_group(&rep).map_err(Failure::from)?;
    let disc = discriminant_rep(&rep);
    let disc_connected = disc.is_transitive();
    let closure = if transitive {
        let closure = galois_closure(&rep).map_err(Failure::from)?;
        Some(ClosureReport {
            degree: closure.degree(),
            genus: genus_from_monodromy(&closure.regular_rep()).map_err(Failure::from)?,
        })
    } else {
        None
    };
    emit(&AnalyzeReport {
        degree: rep.degree(),
        genus: rep.base_genus(),
        transitive,
        orbit_count: rep.orbits().len(),
        monodromy_order: image.order(),
        is_galois: transitive.then(|| is_galois(&rep).expect("transitive")),
        is_cyclic_triple_cover: (transitive && rep.degree() == 3)
            .then(|| is_cyclic_triple_cover(&rep).expect("transitive degree 3")),
        ramification: (rep.degree() == 3)
            .then(|| ramification_profile(&rep).ok())
            .flatten()
            .map(|p| RamificationReport {
                simple: p.simple(),
                total: p.total(),
            }),
        total_space_genus: if transitive {
            Some(genus_from_monodromy(&rep).map_err(Failure::from)?)
        } else {
            None
        },
        discriminant: DiscriminantReport {
            connected: disc_connected,
            genus: if disc_connected {
                Some(genus_from_monodromy(&disc).map_err(Failure::from)?)
            } else {
                None
            },
        },
        closure,
        monodromy_group: image,
    });
    Ok(0)
}

#[derive(Serialize)]
struct AllTuplesReport {
    count: usize,
    tuples: Vec<TowerTuple>,
}

fn cmd_tower(all_tuples: bool, distinct: bool, dot: bool) -> Result<u8, Failure> {
    if all_tuples {
        let mut tuples = find_tower_monodromy();
        if distinct {
            tuples = distinct_tuples_up_to_conjugacy(&tuples);
        }
        emit(&AllTuplesReport {
            count: tuples.len(),
            tuples,
        });
        return Ok(0);
    }
    let report = canonical_tower_report().map_err(Failure::from)?;
    if dot {
        print!("{}", tower_dot(&report));
    } else {
        emit(&report);
    }
    Ok(0)
}

#[derive(Serialize)]
struct AccolaReport {
    lhs: i64,
    rhs: i64,
    residual: i64,
}

#[derive(Serialize)]
struct AccolaSolution {
    solved_genus: usize,
}

fn cmd_accola(
    genus: usize,
    group_order: usize,
    quotient_genus: Option<usize>,
    part_specs: &[String],
    solve_part: Option<usize>,
    solve_quotient: bool,
) -> Result<u8, Failure> {
    let parts: Vec<(usize, usize)> = part_specs
        .iter()
        .map(|spec| {
            let (order, part_genus) = spec
                .split_once(':')
                .ok_or_else(|| Failure::Usage(format!("part '{spec}' is not of the form N:G")))?;
            let order = order
                .parse()
                .map_err(|_| Failure::Usage(format!("bad part order in '{spec}'")))?;
            let part_genus = part_genus
                .parse()
                .map_err(|_| Failure::Usage(format!("bad part genus in '{spec}'")))?;
            Ok((order, part_genus))
        })
        .collect::<Result<_, Failure>>()?;

    if solve_quotient {
        let solved = accola_solve_quotient_genus(genus, group_order, &parts)
            .map_err(Failure::from)?;
        emit(&AccolaSolution {
            solved_genus: solved,
        });
        return Ok(0);
    }
    if let Some(index) = solve_part {
        let p0 = quotient_genus
            .ok_or_else(|| Failure::Usage("--quotient-genus is required".into()))?;
        let solved = accola_solve_part_genus(genus, group_order, p0, &parts, index)
            .map_err(Failure::from)?;
        emit(&AccolaSolution {
            solved_genus: solved,
        });
        return Ok(0);
    }
    let p0 =
        quotient_genus.ok_or_else(|| Failure::Usage("--quotient-genus is required".into()))?;
    let residual = accola_residual(genus, group_order, p0, &parts).map_err(Failure::from)?;
    let lhs = (parts.len() as i64 - 1) * genus as i64 + (group_order * p0) as i64;
    emit(&AccolaReport {
        lhs,
        rhs: lhs - residual,
        residual,
    });
    Ok(0)
}

#[derive(Serialize)]
struct PrymTypeReport {
    base_genus: usize,
    simple: usize,
    total: usize,
    dimension: usize,
    #[serde(rename = "type")]
    type_string: String,
    entries: Vec<u64>,
    principal_multiple: bool,
}

fn cmd_prym_type(base_genus: usize, simple: usize, total: usize) -> Result<u8, Failure> {
    let profile = RamificationProfile::new(simple, total).map_err(Failure::from)?;
    let induced = prym_type(base_genus, &profile).map_err(Failure::from)?;
    emit(&PrymTypeReport {
        base_genus,
        simple,
        total,
        dimension: prym_dimension(base_genus, &profile).map_err(Failure::from)?,
        type_string: induced.to_string(),
        entries: induced.entries().to_vec(),
        principal_multiple: is_principal_multiple(&induced),
    });
    Ok(0)
}

#[derive(Serialize)]
struct PrymFiberReport {
    labels: Vec<String>,
    count: usize,
    partitions: Vec<(Vec<String>, Vec<String>)>,
}

fn cmd_prym_fiber(labels: Option<&str>) -> Result<u8, Failure> {
    let labels: Vec<String> = match labels {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
        None => (1..=6).map(|i| format!("w{i}")).collect(),
    };
    let partitions = prym_map_fiber(&labels).map_err(Failure::from)?;
    emit(&PrymFiberReport {
        labels,
        count: partitions.len(),
        partitions,
    });
    Ok(0)
}

#[derive(Serialize)]
struct ClassifyReport {
    base_genus: usize,
    simple: usize,
    total: usize,
    verdict: PrincipalVerdict,
}

fn cmd_classify(base_genus: usize, simple: usize, total: usize) -> Result<u8, Failure> {
    let profile = RamificationProfile::new(simple, total).map_err(Failure::from)?;
    let verdict = classify_ppp(base_genus, &profile).map_err(Failure::from)?;
    emit(&ClassifyReport {
        base_genus,
        simple,
        total,
        verdict,
    });
    Ok(0)
}

fn cmd_ledger(only: Option<&str>, json: bool) -> Result<u8, Failure> {
    let entries: Vec<ledger::LedgerEntry> = ledger::build_ledger()
        .into_iter()
        .filter(|e| only.is_none_or(|needle| e.claim.contains(needle)))
        .collect();
    if entries.is_empty() {
        return Err(Failure::Usage(format!(
            "no ledger entry matches '{}'",
            only.unwrap_or_default()
        )));
    }
    if json {
        emit(&entries);
    } else {
        print!("{}", ledger::render_table(&entries));
    }
    let mismatches = entries.iter().filter(|e| e.status == "mismatch").count();
    Ok(u8::from(mismatches > 0))
}
