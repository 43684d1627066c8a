//! Command-line front end.
//!
//! Exit codes: 0 all checks passed, 1 a certified failure was found, 2 usage
//! or configuration error, 3 at least one comparison stayed indeterminate.

use crate::abundance::{enum_ca, enum_sa_bruteforce, enum_sa_structured};
use crate::audit::{audit_lemma, LemmaId};
use crate::chain::probe_chain;
use crate::error::{Error, Result};
use crate::factored::FactoredNumber;
use crate::ga::check_extraordinary;
use crate::primes::PrimeTable;
use crate::report::{write_jsonl, RunHeader};
use crate::scan::{scan_nicolas, scan_robin, ScanConfig};
use crate::verdict::{Ladder, Verdict};
use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "gronwall",
    version,
    about = "Certified workbench for the Gronwall ratio, abundance records and the related inequality chain"
)]
pub struct Cli {
    /// Precision escalation ladder, e.g. 64,256,1024,4096
    #[arg(long, global = true)]
    pub ladder: Option<String>,
    /// Config file with key=value lines (currently: ladder=...)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the JSONL report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check Robin's inequality for every n in (lo, hi]
    ScanRobin {
        #[arg(long, default_value_t = 5040)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long, default_value_t = 1 << 20)]
        segment: u64,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Check Nicolas's inequality for the first jmax primorials
    ScanNicolas {
        #[arg(long)]
        jmax: usize,
    },
    /// Enumerate superabundant numbers
    EnumSa {
        /// Exhaustive sieve scan up to this bound
        #[arg(long, conflicts_with = "log10_limit")]
        hi: Option<u64>,
        /// Structured shape enumeration up to 10^limit
        #[arg(long)]
        log10_limit: Option<f64>,
    },
    /// Enumerate colossally abundant numbers with bounded largest prime
    EnumCa {
        #[arg(long)]
        max_prime: u64,
    },
    /// Classify one candidate: GA1, bounded GA2, extraordinary
    Classify {
        /// Integer or factored form like "2^5 * 3^2 * [5..7]"
        #[arg(long)]
        n: String,
        /// GA2 multiplier search bound
        #[arg(long, default_value_t = 100)]
        max_c: u64,
    },
    /// Audit a structural lemma over an enumerated record stream
    AuditLemmas {
        /// Which claim: 1, 3, 4 or 5
        #[arg(long)]
        lemma: String,
        /// Source: brute-force SA records up to this bound
        #[arg(long, conflicts_with_all = ["sa_log10", "ca_max_prime"])]
        sa_hi: Option<u64>,
        /// Source: structured SA records up to 10^limit
        #[arg(long, conflicts_with = "ca_max_prime")]
        sa_log10: Option<f64>,
        /// Source: CA records with largest prime up to this bound
        #[arg(long)]
        ca_max_prime: Option<u64>,
    },
    /// Evaluate every link of the contradiction chain against a candidate
    ProbeChain {
        /// Integer or factored form
        #[arg(long)]
        n: String,
    },
    /// Quick end-to-end sanity checks
    Selftest,
}

/// Resolve the ladder with precedence: flag, then GRONWALL_LADDER, then the
/// config file, then the built-in default.
pub fn resolve_ladder(flag: Option<&str>, config_path: Option<&PathBuf>) -> Result<Ladder> {
    if let Some(s) = flag {
        return Ladder::parse(s);
    }
    if let Ok(s) = std::env::var("GRONWALL_LADDER") {
        return Ladder::parse(&s);
    }
    if let Some(path) = config_path {
        let text = std::fs::read_to_string(path)?;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line.split_once('=') {
                Some((k, v)) if k.trim() == "ladder" => return Ladder::parse(v.trim()),
                Some(_) => {}
                None => {
                    return Err(Error::Parse(format!(
                        "config line without key=value: {line:?}"
                    )))
                }
            }
        }
    }
    Ok(Ladder::default())
}

/// Parse a candidate given either as a plain integer or in factored form.
pub fn parse_candidate(s: &str, table: &PrimeTable) -> Result<FactoredNumber> {
    let t = s.trim();
    if t.chars().all(|c| c.is_ascii_digit()) && t != "1" {
        let v: u64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("integer out of range: {t:?}")))?;
        FactoredNumber::from_u64(v, table)
    } else {
        t.parse()
    }
}

/// Rough upper bound for the j-th prime (1-based), for table sizing.
fn nth_prime_bound(j: usize) -> u64 {
    if j < 6 {
        return 16;
    }
    let jf = j as f64;
    (jf * (jf.ln() + jf.ln().ln())) as u64 + 64
}

struct Outcome {
    fails: bool,
    indeterminate: bool,
}

fn emit<T: serde::Serialize>(
    out: Option<&PathBuf>,
    header: &RunHeader,
    items: &[T],
) -> Result<()> {
    match out {
        Some(path) => {
            let f = std::fs::File::create(path)?;
            write_jsonl(std::io::BufWriter::new(f), header, items)
        }
        None => {
            let stdout = std::io::stdout();
            write_jsonl(stdout.lock(), header, items)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let ladder = resolve_ladder(cli.ladder.as_deref(), cli.config.as_ref())?;
    let ladder_cfg = ladder.to_config_string();
    let out = cli.out.as_ref();
    match &cli.cmd {
        Command::ScanRobin {
            lo,
            hi,
            segment,
            budget,
            threads,
        } => {
            let cfg = ScanConfig {
                segment_size: *segment,
                budget: *budget,
                ladder: ladder.clone(),
                threads: *threads,
            };
            let table = PrimeTable::new(((*hi as f64).sqrt() as u64 + 2).max(1000));
            let report = scan_robin(*lo, *hi, &cfg, &table)?;
            let header = RunHeader::new(
                "robin-scan/1",
                &format!(
                    "cmd=scan-robin;lo={lo};hi={hi};segment={segment};budget={budget};threads={threads};ladder={ladder_cfg}"
                ),
            );
            emit(out, &header, &report.records)?;
            eprintln!(
                "scan-robin ({}, {}]: {} checked, {} fast, {} certified, {} fails, {} indeterminate",
                report.lo,
                report.hi,
                report.checked,
                report.fast_path,
                report.certified,
                report.fails.len(),
                report.indeterminate.len()
            );
            Ok(Outcome {
                fails: !report.fails.is_empty(),
                indeterminate: !report.indeterminate.is_empty(),
            })
        }
        Command::ScanNicolas { jmax } => {
            let table = PrimeTable::new(nth_prime_bound(*jmax).max(1000));
            let report = scan_nicolas(*jmax, &ladder, &table)?;
            let header = RunHeader::new(
                "nicolas-scan/1",
                &format!("cmd=scan-nicolas;jmax={jmax};ladder={ladder_cfg}"),
            );
            emit(out, &header, &report.records)?;
            eprintln!(
                "scan-nicolas j<={}: {} hold, {} fail, {} indeterminate",
                report.jmax,
                report.holds,
                report.fails.len(),
                report.indeterminate.len()
            );
            Ok(Outcome {
                fails: !report.fails.is_empty(),
                indeterminate: !report.indeterminate.is_empty(),
            })
        }
        Command::EnumSa { hi, log10_limit } => {
            let records = match (hi, log10_limit) {
                (Some(hi), None) => {
                    let table = PrimeTable::new(((*hi as f64).sqrt() as u64 + 2).max(1000));
                    enum_sa_bruteforce(*hi, &table)?
                }
                (None, Some(d)) => {
                    let limit = d * std::f64::consts::LN_10;
                    let table = PrimeTable::new(((limit * 1.5) as u64 + 100).max(1000));
                    enum_sa_structured(limit, &table)?
                }
                _ => {
                    return Err(Error::Domain(
                        "enum-sa needs exactly one of --hi or --log10-limit".into(),
                    ))
                }
            };
            let header = RunHeader::new(
                "abundance/1",
                &format!(
                    "cmd=enum-sa;hi={hi:?};log10_limit={log10_limit:?};ladder={ladder_cfg}"
                ),
            );
            emit(out, &header, &records)?;
            eprintln!("enum-sa: {} records", records.len());
            Ok(Outcome {
                fails: false,
                indeterminate: false,
            })
        }
        Command::EnumCa { max_prime } => {
            let table = PrimeTable::new((*max_prime).max(1000));
            let records = enum_ca(*max_prime, &ladder, &table)?;
            let header = RunHeader::new(
                "abundance/1",
                &format!("cmd=enum-ca;max_prime={max_prime};ladder={ladder_cfg}"),
            );
            emit(out, &header, &records)?;
            eprintln!("enum-ca: {} records", records.len());
            Ok(Outcome {
                fails: false,
                indeterminate: false,
            })
        }
        Command::Classify { n, max_c } => {
            let probe_table = PrimeTable::new(1000);
            let parsed = parse_candidate(n, &probe_table)?;
            let cap = parsed.largest_prime().unwrap_or(2).max(1000);
            let table = PrimeTable::new(cap + 100);
            let parsed = parse_candidate(n, &table)?;
            let report = check_extraordinary(&parsed, *max_c, &ladder, &table)?;
            let header = RunHeader::new(
                "classify/1",
                &format!("cmd=classify;n={parsed};max_c={max_c};ladder={ladder_cfg}"),
            );
            emit(out, &header, std::slice::from_ref(&report))?;
            eprintln!(
                "classify {}: ga1={} ga2={} extraordinary={}",
                report.candidate, report.ga1.verdict, report.ga2.verdict, report.extraordinary
            );
            Ok(Outcome {
                fails: report.extraordinary == Verdict::Fails,
                indeterminate: report.extraordinary == Verdict::Indeterminate,
            })
        }
        Command::AuditLemmas {
            lemma,
            sa_hi,
            sa_log10,
            ca_max_prime,
        } => {
            let lemma: LemmaId = lemma.parse()?;
            let (records, table, source) = match (sa_hi, sa_log10, ca_max_prime) {
                (Some(hi), None, None) => {
                    let t = PrimeTable::new(((*hi as f64).sqrt() as u64 + 2).max(1000));
                    (enum_sa_bruteforce(*hi, &t)?, t, format!("sa-brute:{hi}"))
                }
                (None, Some(d), None) => {
                    let limit = d * std::f64::consts::LN_10;
                    let t = PrimeTable::new(((limit * 1.5) as u64 + 100).max(1000));
                    (enum_sa_structured(limit, &t)?, t, format!("sa-structured:{d}"))
                }
                (None, None, Some(mp)) => {
                    let t = PrimeTable::new((*mp).max(1000));
                    (enum_ca(*mp, &ladder, &t)?, t, format!("ca:{mp}"))
                }
                _ => {
                    return Err(Error::Domain(
                        "audit-lemmas needs exactly one of --sa-hi, --sa-log10, --ca-max-prime"
                            .into(),
                    ))
                }
            };
            let report = audit_lemma(lemma, &records, &ladder, &table)?;
            let header = RunHeader::new(
                "lemma-audit/1",
                &format!("cmd=audit-lemmas;lemma={lemma:?};source={source};ladder={ladder_cfg}"),
            );
            emit(out, &header, std::slice::from_ref(&report))?;
            eprintln!(
                "audit {:?} over {source}: {} records, {} applicable, {} hold, {} fail, {} indeterminate",
                report.lemma, report.total, report.applicable, report.holds, report.fails,
                report.indeterminate
            );
            Ok(Outcome {
                fails: report.fails > 0,
                indeterminate: report.indeterminate > 0,
            })
        }
        Command::ProbeChain { n } => {
            let probe_table = PrimeTable::new(1000);
            let parsed = parse_candidate(n, &probe_table)?;
            let cap = parsed.largest_prime().unwrap_or(2).max(1000);
            let table = PrimeTable::new(cap + 100);
            let parsed = parse_candidate(n, &table)?;
            let report = probe_chain(&parsed, &ladder, &table)?;
            let header = RunHeader::new(
                "chain-probe/1",
                &format!("cmd=probe-chain;n={parsed};ladder={ladder_cfg}"),
            )
            .with_relaxed(report.relaxed_premises.clone());
            emit(out, &header, &report.steps)?;
            for s in &report.steps {
                eprintln!("{:5} {:55} {}", s.id, s.statement, s.verdict);
            }
            let fails = report.first_failure().is_some();
            let indeterminate = report
                .steps
                .iter()
                .any(|s| s.verdict == Verdict::Indeterminate);
            Ok(Outcome {
                fails,
                indeterminate,
            })
        }
        Command::Selftest => {
            let table = PrimeTable::new(20_000);
            let mut ok = true;
            let mut check = |name: &str, pass: bool| {
                eprintln!("selftest: {name} ... {}", if pass { "ok" } else { "FAILED" });
                ok &= pass;
            };
            let g = FactoredNumber::from_u64(5040, &table)?
                .gronwall_g(64, &table)?
                .g;
            check(
                "G(5040) near 1.7910",
                (g.mid_f64() - 1.790_973_366_534_881).abs() < 1e-9,
            );
            let h2 = crate::factored::nicolas_h(2, 64, &table)?;
            check(
                "H_2 near 5.1440",
                (h2.mid_f64() - 5.144_049_850_050_88).abs() < 1e-9,
            );
            let ca = enum_ca(13, &ladder, &table)?;
            let vals: Vec<u64> = ca
                .iter()
                .filter_map(|r| r.n_factored.to_u64(&table).unwrap())
                .collect();
            check("CA prefix", vals.starts_with(&[2, 6, 12, 60, 120, 360, 2520]));
            let chain = probe_chain(&FactoredNumber::from_u64(10080, &table)?, &ladder, &table)?;
            check("chain(10080) first failure at S9", chain.first_failure() == Some("S9"));
            let scan = scan_robin(5040, 20_000, &ScanConfig::default(), &table)?;
            check(
                "robin scan (5040, 20000] clean",
                scan.fails.is_empty() && scan.indeterminate.is_empty(),
            );
            Ok(Outcome {
                fails: !ok,
                indeterminate: false,
            })
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            if outcome.fails {
                1
            } else if outcome.indeterminate {
                3
            } else {
                0
            }
        }
        Err(Error::Parse(msg)) | Err(Error::Domain(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
