//! Command line interface: `ingest`, `rerank`, `eval` and `report`.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus::{ingest_tweets, read_news, read_queries, write_tweets, IngestOptions};
use crate::error::{Error, Result};
use crate::eval::{
    render_table, write_report_csv, Discount, EvalReport, Gain, MissingPolicy, NdcgConfig,
};
use crate::experiment::{rank_all, report, Dataset, EvalSettings, RankSettings};
use crate::geofilter::{AbbrevMatch, RegionTable};
use crate::judgments::{aggregate, read_judgments, JudgmentSet, DEFAULT_MIN_JUDGES};
use crate::similarity::SimMode;
use crate::textproc::{Pipeline, Stemmer, StopwordList};
use crate::voting::{read_rankings, write_rankings, VoteOptions};

#[derive(Debug, Parser)]
#[command(
    name = "ctvm",
    version,
    about = "Re-rank news results with community tweet votes"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimArg {
    CommonSet,
    FullCosine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NdcgArg {
    Standard,
    Literal,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Regions whose tweets vote and whose judges are evaluated
    #[arg(long, global = true, value_delimiter = ',', default_value = "CA,NY,TX")]
    pub regions: Vec<String>,
    /// `code,full_name` file; defaults to the built-in US state table
    #[arg(long, global = true)]
    pub region_table: Option<PathBuf>,
    /// NDCG cutoffs
    #[arg(long, global = true, value_delimiter = ',', default_value = "3,5,10")]
    pub k: Vec<usize>,
    #[arg(long, global = true, value_enum, default_value = "common-set")]
    pub sim: SimArg,
    #[arg(long, global = true, value_enum, default_value = "standard")]
    pub ndcg: NdcgArg,
    /// Stopword file, one word per line; defaults to the bundled SMART list
    #[arg(long, global = true)]
    pub stopwords: Option<PathBuf>,
    /// Add news snippets to titles when building news vectors
    #[arg(long, global = true)]
    pub include_snippet: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_MIN_JUDGES)]
    pub min_judges: usize,
    /// Skip rankings containing unjudged documents instead of scoring them 0
    #[arg(long, global = true)]
    pub require_complete: bool,
    /// Match region codes anywhere in the location, not only as whole words
    #[arg(long, global = true)]
    pub loose_abbrev: bool,
    /// Round mean judgments to the nearest grade before scoring
    #[arg(long, global = true)]
    pub round_relevance: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse tweets, resolve regions, drop duplicates and malformed lines
    Ingest {
        #[arg(long)]
        tweets: PathBuf,
        /// Resolved tweets (JSON lines); stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Ingestion summary (JSON); stderr when omitted
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Produce engine and community rankings for every result list
    Rerank {
        #[arg(long)]
        tweets: PathBuf,
        #[arg(long)]
        news: PathBuf,
        #[arg(long)]
        queries: PathBuf,
        /// Rankings (CSV); stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score a rankings file against judgments, one table per region
    Eval {
        #[arg(long)]
        rankings: PathBuf,
        #[arg(long)]
        judgments: PathBuf,
        /// Machine-readable rows (CSV)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full pipeline from raw files to comparison tables
    Report {
        #[arg(long)]
        tweets: PathBuf,
        #[arg(long)]
        news: PathBuf,
        #[arg(long)]
        queries: PathBuf,
        #[arg(long)]
        judgments: PathBuf,
        /// Machine-readable rows (CSV)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl GlobalOpts {
    fn region_table(&self) -> Result<RegionTable> {
        let table = match &self.region_table {
            Some(p) => RegionTable::load(p)?,
            None => RegionTable::us_states(),
        };
        for r in &self.regions {
            if !table.contains(r) {
                return Err(Error::input(format!(
                    "region `{r}` is not in the region table"
                )));
            }
        }
        Ok(table)
    }

    fn ingest_options(&self) -> IngestOptions {
        IngestOptions {
            abbrev: if self.loose_abbrev {
                AbbrevMatch::Loose
            } else {
                AbbrevMatch::Token
            },
            ..IngestOptions::default()
        }
    }

    fn rank_settings(&self) -> Result<RankSettings> {
        let stopwords = match &self.stopwords {
            Some(p) => StopwordList::load(p)?,
            None => StopwordList::smart(),
        };
        Ok(RankSettings {
            regions: self.regions.clone(),
            pipeline: Pipeline::new(stopwords, Stemmer::Porter),
            vote: VoteOptions {
                sim: match self.sim {
                    SimArg::CommonSet => SimMode::CommonSet,
                    SimArg::FullCosine => SimMode::FullCosine,
                },
                include_snippet: self.include_snippet,
            },
        })
    }

    fn ndcg_config(&self) -> Result<NdcgConfig> {
        match self.ndcg {
            NdcgArg::Standard => {
                NdcgConfig::new(self.k.clone(), Gain::Exponential, Discount::Position)
            }
            NdcgArg::Literal => NdcgConfig::literal(self.k.clone()),
        }
    }

    fn eval_settings(&self) -> EvalSettings {
        EvalSettings {
            policy: if self.require_complete {
                MissingPolicy::RequireComplete
            } else {
                MissingPolicy::ZeroFill
            },
            round_relevance: self.round_relevance,
        }
    }

    fn judgments(&self, path: &Path) -> Result<Vec<JudgmentSet<f64>>> {
        let (records, malformed) = read_judgments(open(path)?)?;
        let (sets, rep) = aggregate::<f64>(&records, self.min_judges)?;
        eprintln!(
            "judgments: {} sets kept, {} dropped (< {} judges), {} records skipped",
            rep.sets_kept,
            rep.sets_dropped,
            self.min_judges,
            rep.records_skipped + malformed
        );
        Ok(sets)
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(format!("opening {}", path.display()), e))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                Error::io(format!("creating {}", p.display()), e)
            })?))
        }
        None => Box::new(io::stdout().lock()),
    })
}

fn load_dataset(g: &GlobalOpts, tweets: &Path, news: &Path, queries: &Path) -> Result<Dataset> {
    let table = g.region_table()?;
    let (tweets, rep) = ingest_tweets(open(tweets)?, &table, &g.ingest_options())?;
    if rep.malformed_dropped + rep.duplicates_dropped > 0 {
        eprintln!(
            "tweets: {} malformed and {} duplicate lines dropped",
            rep.malformed_dropped, rep.duplicates_dropped
        );
    }
    Ok(Dataset {
        tweets,
        news: read_news(open(news)?)?,
        queries: read_queries(open(queries)?)?,
    })
}

fn print_reports(reports: &[(String, EvalReport<f64>)], out: Option<&Path>) -> Result<()> {
    let mut stdout = io::stdout().lock();
    for (region, rep) in reports {
        writeln!(stdout, "{}", render_table(&rep.rows, Some(region)))
            .map_err(|e| Error::io("writing stdout", e))?;
        if rep.missing_judgments > 0 || rep.skipped_rankings > 0 {
            eprintln!(
                "{region}: {} unjudged documents scored 0, {} rankings skipped",
                rep.missing_judgments, rep.skipped_rankings
            );
        }
    }
    if let Some(path) = out {
        let w = output(Some(path))?;
        write_report_csv(
            w,
            reports.iter().map(|(r, rep)| (r.as_str(), &rep.rows[..])),
        )?;
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Ingest {
            tweets,
            out,
            report,
        } => {
            let table = g.region_table()?;
            let (parsed, rep) = ingest_tweets(open(tweets)?, &table, &g.ingest_options())?;
            let mut w = output(out.as_deref())?;
            write_tweets(&mut w, &parsed)?;
            w.flush().map_err(|e| Error::io("writing tweets", e))?;
            match report {
                Some(p) => {
                    let mut rw = output(Some(p))?;
                    writeln!(rw, "{}", rep.to_json())
                        .map_err(|e| Error::io("writing report", e))?;
                    rw.flush().map_err(|e| Error::io("writing report", e))?;
                }
                None => eprintln!("{}", rep.to_json()),
            }
        }
        Command::Rerank {
            tweets,
            news,
            queries,
            out,
        } => {
            let data = load_dataset(g, tweets, news, queries)?;
            let rankings = rank_all::<f64>(&data, &g.rank_settings()?)?;
            let w = output(out.as_deref())?;
            write_rankings(w, rankings.iter().map(|(k, r)| (k, r)))?;
        }
        Command::Eval {
            rankings,
            judgments,
            out,
        } => {
            g.region_table()?;
            let rankings = read_rankings::<f64, _>(open(rankings)?)?;
            let sets = g.judgments(judgments)?;
            let reports = report(
                &rankings,
                &sets,
                &g.regions,
                &g.ndcg_config()?,
                &g.eval_settings(),
            )?;
            print_reports(&reports, out.as_deref())?;
        }
        Command::Report {
            tweets,
            news,
            queries,
            judgments,
            out,
        } => {
            let data = load_dataset(g, tweets, news, queries)?;
            let ndcg = g.ndcg_config()?;
            let rankings = rank_all::<f64>(&data, &g.rank_settings()?)?;
            let sets = g.judgments(judgments)?;
            let reports = report(&rankings, &sets, &g.regions, &ndcg, &g.eval_settings())?;
            print_reports(&reports, out.as_deref())?;
        }
    }
    Ok(())
}
