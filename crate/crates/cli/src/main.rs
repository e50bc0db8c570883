mod cache;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use khmut::diagram::PlanarDiagram;
use khmut::invariants::{jones_oracle, khovanov_homology_with, Options};
use khmut::tangle::{mutant_pair, parse_tangles, Mutation};
use khmut::{fixtures, Coefficients, Error, HomologyTable, LinkName, DEFAULT_CAP};

use report::{ComparisonReport, ResultDocument};

#[derive(Parser)]
#[command(name = "khmut", version, about = "Khovanov homology of links and their Conway mutants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the homology table and Kh, V, W of one link.
    Compute {
        link: String,
        #[command(flatten)]
        common: Common,
    },
    /// Close two tangles with and without mutating the second, and compare.
    Mutate {
        tangle_file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        rho: u8,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the homology of two links; exits 1 when they differ.
    Compare {
        a: String,
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Jones polynomial from the state sum and from the homology pipeline.
    Jones {
        link: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Print the canonical PD code of a link.
    Show { link: String },
    /// Regenerate golden tables for the named fixtures (all by default).
    Golden {
        names: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Coeffs::Z)]
    coeffs: Coeffs,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Coeffs {
    Z,
    Q,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            coefficients: match self.coeffs {
                Coeffs::Z => Coefficients::Z,
                Coeffs::Q => Coefficients::Q,
            },
            cap: self.cap,
            check_d_squared: true,
        }
    }

    fn cache(&self) -> Option<cache::Cache> {
        if self.no_cache {
            return None;
        }
        self.cache_dir
            .clone()
            .or_else(cache::default_dir)
            .map(cache::Cache::new)
    }
}

/// Exit status for an error: 3 for internal inconsistencies, 2 otherwise.
fn failure(err: &anyhow::Error) -> ExitCode {
    let internal = err.chain().any(|c| {
        matches!(
            c.downcast_ref::<Error>(),
            Some(Error::NonzeroComposition { .. } | Error::NonzeroProduct)
        ) || c.downcast_ref::<report::Inconsistent>().is_some()
    });
    ExitCode::from(if internal { 3 } else { 2 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            failure(&e)
        }
    }
}

fn build(spec: &str) -> anyhow::Result<PlanarDiagram> {
    let name: LinkName = spec.parse()?;
    Ok(name.build()?)
}

fn compute(d: &PlanarDiagram, common: &Common) -> anyhow::Result<ResultDocument> {
    let opts = common.options();
    let key = cache::diagram_hash(d);
    let store = common.cache();
    if let Some(doc) = store.as_ref().and_then(|c| c.load(&key, opts.coefficients)) {
        return Ok(doc);
    }
    let start = Instant::now();
    let table = khovanov_homology_with(d, &opts)?;
    let doc = ResultDocument::new(d, key, table, start.elapsed());
    if let Some(c) = &store {
        // a failed cache write only costs a recomputation later
        if let Err(e) = c.store(&doc) {
            eprintln!("warning: cache write failed: {e:#}");
        }
    }
    Ok(doc)
}

fn run(cmd: Command) -> anyhow::Result<ExitCode> {
    match cmd {
        Command::Compute { link, common } => {
            let d = build(&link)?;
            let doc = compute(&d, &common)?;
            match common.format {
                Format::Json => println!("{}", doc.to_json()),
                Format::Table => print!("{}", doc.render()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mutate {
            tangle_file,
            rho,
            common,
        } => {
            let text = std::fs::read_to_string(&tangle_file)
                .map_err(|e| anyhow::anyhow!("{}: {e}", tangle_file.display()))?;
            let tangles = parse_tangles(&text)?;
            let [t1, t2] = &tangles[..] else {
                anyhow::bail!(
                    "{} holds {} tangles; expected exactly two",
                    tangle_file.display(),
                    tangles.len()
                );
            };
            let (l, lp) = mutant_pair(t1, t2, Mutation::from_index(rho)?)?;
            let a = compute(&l, &common)?;
            let b = compute(&lp, &common)?;
            let report = ComparisonReport::new(&a, &b);
            match common.format {
                Format::Json => println!("{}", report::pair_json(&a, &b, &report)),
                Format::Table => {
                    println!("== closure of T1 T2");
                    print!("{}", a.render());
                    println!("\n== closure of T1 rho{rho}(T2)");
                    print!("{}", b.render());
                    println!();
                    print!("{}", report.render());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare { a, b, common } => {
            let da = compute(&build(&a)?, &common)?;
            let db = compute(&build(&b)?, &common)?;
            let report = ComparisonReport::new(&da, &db);
            match common.format {
                Format::Json => println!("{}", report::pair_json(&da, &db, &report)),
                Format::Table => print!("{}", report.render()),
            }
            Ok(if report.homology_equal {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Jones { link, cap } => {
            let d = build(&link)?;
            let oracle = jones_oracle(&d, cap)?;
            let opts = Options {
                coefficients: Coefficients::Q,
                cap,
                check_d_squared: true,
            };
            let kh = khmut::poincare_polynomial(&khovanov_homology_with(&d, &opts)?);
            let v = khmut::v_polynomial(&kh);
            println!("state sum:  {oracle}");
            println!("V from Kh:  {v}");
            if oracle != v {
                return Err(report::Inconsistent("state sum and V disagree".into()).into());
            }
            println!("consistent");
            Ok(ExitCode::SUCCESS)
        }
        Command::Show { link } => {
            let d = build(&link)?;
            println!("{}", d.canonical().to_pd_string());
            println!(
                "# crossings={} components={} writhe={}",
                d.crossing_count(),
                d.components(),
                d.writhe()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Golden { names, out, cap } => {
            let names: Vec<String> = if names.is_empty() {
                fixtures::fixture_names().map(String::from).collect()
            } else {
                names
            };
            for name in names {
                let d = fixtures::fixture(&name)?;
                let opts = Options {
                    cap,
                    ..Options::default()
                };
                let table: HomologyTable = khovanov_homology_with(&d, &opts)?;
                let path = match &out {
                    Some(dir) => dir.join(format!("{name}.json")),
                    None => fixtures::golden_path(&name),
                };
                let mut text = serde_json::to_string_pretty(&table)?;
                text.push('\n');
                cache::write_atomic(&path, text.as_bytes())?;
                println!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
