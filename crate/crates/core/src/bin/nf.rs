use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use polya_lab::classgroup::cache::{class_group_cached, clear, default_dir};
use polya_lab::field::Embedding;
use polya_lab::galois::{find_embeddings, GaloisGroup, Tower};
use polya_lab::polya::{compute_polya, ClassGroups};
use polya_lab::verify::table::parse_field;
use polya_lab::verify::{load_table, run_batch, BatchOptions, CheckId};
use polya_lab::Result;

/// Class groups, Pólya groups and Ostrowski quotients of small number fields.
#[derive(Parser)]
#[command(name = "nf", version)]
struct Cli {
    /// Class group cache directory (default: $NF_CACHE_DIR or .nf-cache)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Seed for the relation search
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Class group of a field: `sqrt(-5)`, `x^4+3x^2+1`, or `5,0,1`
    Classgroup { field: String },
    /// Pólya group of a Galois field over Q
    Polya {
        field: String,
        #[arg(long)]
        audit_bound: Option<u64>,
    },
    /// Ostrowski quotient of a tower `<base>:<top>`
    Ostrowski {
        tower: String,
        #[arg(long)]
        audit_bound: Option<u64>,
    },
    /// Run theorem checks over a table
    Verify {
        #[arg(long)]
        table: PathBuf,
        /// `all` or comma-separated check ids
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        audit_bound: Option<u64>,
    },
    /// Cache maintenance
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Remove every cached class group
    Clear,
}

fn int(x: &BigInt) -> Value {
    i64::try_from(x)
        .map(Value::from)
        .unwrap_or_else(|_| Value::from(x.to_string()))
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).unwrap());
}

fn run(cli: Cli) -> Result<bool> {
    let cache = cli.cache_dir.clone().unwrap_or_else(default_dir);
    match cli.command {
        Command::Classgroup { field } => {
            let k = parse_field(&field)?;
            let cl = class_group_cached(&k, cli.seed, &cache)?;
            let (r1, r2) = k.signature();
            print(&json!({
                "poly": k.poly().to_string(),
                "disc": int(k.disc()),
                "signature": [r1, r2],
                "minkowski_bound": k.minkowski_bound().to_string(),
                "factor_base": cl.factor_base().iter().map(|p| p.summary()).collect::<Vec<_>>(),
                "invariants": cl.structure(),
                "structure": cl.structure().to_string(),
                "h": int(&cl.order()),
                "oracle": cl.oracle().map(int),
            }));
            Ok(true)
        }
        Command::Polya { field, audit_bound } => {
            let l = parse_field(&field)?;
            let store = ClassGroups::new(cli.seed, Some(cache));
            let tower = Tower::over_rationals(GaloisGroup::compute(&l)?);
            let data = compute_polya(&tower, &store, audit_bound)?;
            print(&serde_json::to_value(data.record(&field)).unwrap());
            Ok(data.audit.is_none_or(|(_, changed)| !changed))
        }
        Command::Ostrowski { tower, audit_bound } => {
            let (base, top) = tower
                .split_once(':')
                .ok_or_else(|| polya_lab::Error::Table("tower must be written <base>:<top>".into()))?;
            let k = parse_field(base)?;
            let l = parse_field(top)?;
            let emb: Embedding = find_embeddings(&k, &l)?.remove(0);
            let t = Tower::new(emb.clone(), GaloisGroup::compute(&l)?)?;
            let store = ClassGroups::new(cli.seed, Some(cache));
            let data = compute_polya(&t, &store, audit_bound)?;
            let mut v = serde_json::to_value(data.record(&tower)).unwrap();
            v["embedding"] = emb.image().iter().map(int).collect();
            print(&v);
            Ok(data.audit.is_none_or(|(_, changed)| !changed))
        }
        Command::Verify {
            table,
            checks,
            out,
            audit_bound,
        } => {
            let entries = load_table(&table)?;
            let checks = CheckId::parse_list(&checks)?;
            let opts = BatchOptions {
                seed: cli.seed,
                cache_dir: Some(cache),
                audit_bound,
                table_name: table
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
            };
            let report = run_batch(&entries, &checks, &opts);
            report.write(&out)?;
            let s = &report.summary;
            eprintln!(
                "{} entries: {} pass, {} fail, {} not applicable",
                s.entries, s.pass, s.fail, s.not_applicable
            );
            Ok(report.all_passed())
        }
        Command::Cache {
            action: CacheAction::Clear,
        } => {
            let n = clear(&cache)?;
            eprintln!("removed {n} cached class groups from {}", cache.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
